#include "kolmo/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "kolmo/cluster.hpp"
#include "kolmo/coding.hpp"
#include "kolmo/config.hpp"
#include "kolmo/entropy.hpp"
#include "kolmo/error.hpp"
#include "kolmo/ncd.hpp"
#include "kolmo/ngd.hpp"
#include "kolmo/randomness.hpp"
#include "kolmo/toy_k.hpp"

namespace kolmo::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_count(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_format, "not a count: '" + s + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ingestion, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_all(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos)
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    // Decimal: scale by a power of ten.
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    auto digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
    return Rational(BigInt(digits.empty() ? "0" : digits), scale);
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_format, "not a rational number: '" + s + "'");
  }
}

std::string rational_text(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str()
                                                    : boost::multiprecision::numerator(r).str() + "/" +
                                                          boost::multiprecision::denominator(r).str();
}

// Shared state for one invocation.
struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  ToolkitConfig config;
  std::string format;
  std::optional<unsigned> workers;

  unsigned worker_count() const { return workers.value_or(config.workers); }
};

// --- subcommands ---------------------------------------------------------------

struct EntropyArgs {
  std::string counts, probs, text, file;
};

void cmd_entropy(Context& ctx, const EntropyArgs& a) {
  double h = 0;
  std::optional<std::uint64_t> n;
  if (!a.counts.empty()) {
    std::vector<std::uint64_t> counts;
    for (const auto& f : split(a.counts, ',')) counts.push_back(parse_count(f));
    h = entropy_of_counts(counts);
    n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  } else if (!a.probs.empty()) {
    std::vector<double> p;
    for (const auto& f : split(a.probs, ',')) p.push_back(parse_rational(f).convert_to<double>());
    h = entropy(p);
  } else {
    auto text = !a.file.empty() ? read_file(a.file) : a.text;
    auto t = FrequencyTable::of_text(text);
    h = entropy_of_counts(t.counts);
    n = t.total();
  }
  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["entropy"] = std::stod(fmt::format("{:.6f}", h));
    if (n) {
      j["n"] = *n;
      j["nH"] = std::stod(fmt::format("{:.6f}", h * static_cast<double>(*n)));
    }
    ctx.out << j.dump() << '\n';
  } else {
    ctx.out << fmt::format("H = {:.6f}\n", h);
    if (n) ctx.out << fmt::format("n = {}\nnH = {:.6f}\n", *n, h * static_cast<double>(*n));
  }
}

struct HuffmanArgs {
  std::string counts, text, file;
  bool encode = false;
};

void cmd_huffman(Context& ctx, const HuffmanArgs& a) {
  FrequencyTable t;
  std::optional<std::string> text;
  if (!a.counts.empty()) {
    for (const auto& f : split(a.counts, ',')) {
      auto colon = f.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorKind::invalid_format, "expected symbol:count, got '" + f + "'");
      t.symbols.push_back(f.substr(0, colon));
      t.counts.push_back(parse_count(f.substr(colon + 1)));
    }
  } else {
    text = !a.file.empty() ? read_file(a.file) : a.text;
    t = FrequencyTable::of_text(*text);
  }
  auto code = huffman_build(t);
  auto length = code.weighted_length(t.counts);
  double nh = total_information(t.counts);
  std::optional<std::string> bits;
  if (a.encode && text) bits = code.encode(chars_of(*text)).to_string();

  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["code"] = nlohmann::ordered_json::parse(code.to_json());
    j["encoded_bits"] = length;
    j["nH"] = std::stod(fmt::format("{:.6f}", nh));
    if (bits) j["encoded"] = *bits;
    ctx.out << j.dump() << '\n';
    return;
  }
  ctx.out << fmt::format("{:<10} {:>10}  {}\n", "symbol", "count", "codeword");
  for (std::size_t i = 0; i < code.size(); ++i)
    ctx.out << fmt::format("{:<10} {:>10}  {}\n", nlohmann::json(code.alphabet()[i]).dump(), t.counts[i],
                           code.codeword(i).to_string());
  ctx.out << fmt::format("encoded length = {} bits\nnH = {:.6f}\n", length, nh);
  if (bits) ctx.out << *bits << '\n';
}

struct EnumArgs {
  std::string alphabet, encode, decode;
  bool has_encode = false;
};

void cmd_enumcode(Context& ctx, const EnumArgs& a) {
  if (a.alphabet.empty()) throw Error(ErrorKind::invalid_parameter, "--alphabet is required");
  if (a.has_encode) {
    auto bits = enum_encode(a.encode, a.alphabet);
    std::vector<std::size_t> idx;
    for (char c : a.encode) idx.push_back(a.alphabet.find(c));
    auto counts = counts_of(idx, a.alphabet.size());
    auto size = class_size(counts);
    if (ctx.format == "json") {
      nlohmann::ordered_json j;
      j["bits"] = bits.to_string();
      j["length"] = bits.size();
      j["class_size"] = size.str();
      j["rank"] = rank(counts, idx).str();
      ctx.out << j.dump() << '\n';
    } else {
      ctx.out << bits.to_string() << '\n';
      ctx.out << fmt::format("length = {}\nclass size = {}\nrank = {}\nnH = {:.6f}\n", bits.size(), size.str(),
                             rank(counts, idx).str(), total_information(counts));
    }
    return;
  }
  auto word = enum_decode(BitString::from_text(a.decode), a.alphabet);
  if (ctx.format == "json")
    ctx.out << nlohmann::json({{"word", word}}).dump() << '\n';
  else
    ctx.out << word << '\n';
}

struct PackArgs {
  std::string scheme = "unary";
  std::vector<std::string> parts;
  std::string tail;
  std::string unpack;
  std::size_t count = 1;
  bool has_unpack = false;
};

void cmd_pack(Context& ctx, const PackArgs& a) {
  if (a.scheme != "unary" && a.scheme != "len") throw Error(ErrorKind::invalid_parameter, "--scheme must be unary or len");
  if (a.has_unpack) {
    auto bits = BitString::from_text(a.unpack);
    auto p = a.scheme == "unary" ? pair_unpack_unary(bits, a.count) : pair_unpack_len(bits, a.count);
    if (ctx.format == "json") {
      std::vector<std::string> parts;
      for (const auto& u : p.parts) parts.push_back(u.to_string());
      ctx.out << nlohmann::ordered_json({{"parts", parts}, {"tail", p.tail.to_string()}}).dump() << '\n';
    } else {
      for (std::size_t i = 0; i < p.parts.size(); ++i) ctx.out << fmt::format("part {} = \"{}\"\n", i, p.parts[i].to_string());
      ctx.out << fmt::format("tail = \"{}\"\n", p.tail.to_string());
    }
    return;
  }
  std::vector<BitString> parts;
  for (const auto& s : a.parts) parts.push_back(BitString::from_text(s));
  auto tail = BitString::from_text(a.tail);
  auto bits = a.scheme == "unary" ? pair_pack_unary(parts, tail) : pair_pack_len(parts, tail);
  if (ctx.format == "json")
    ctx.out << nlohmann::ordered_json({{"bits", bits.to_string()}, {"length", bits.size()}}).dump() << '\n';
  else
    ctx.out << bits.to_string() << '\n' << "length = " << bits.size() << '\n';
}

struct NcdArgs {
  std::string codec = "huff0";
  std::vector<std::string> files;
  std::string x, y;
  bool clamp = false;
};

void cmd_ncd(Context& ctx, const NcdArgs& a) {
  auto codec = make_codec(a.codec, ctx.config);
  std::string x, y;
  if (a.files.size() == 2) {
    x = read_file(a.files[0]);
    y = read_file(a.files[1]);
  } else if (a.files.empty()) {
    x = a.x;
    y = a.y;
  } else {
    throw Error(ErrorKind::invalid_parameter, "ncd takes exactly two files (or --x/--y)");
  }
  SizeCache cache;
  auto bx = as_bytes(x), by = as_bytes(y);
  double d = ncd(*codec, bx, by, {a.clamp}, &cache);
  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["codec"] = codec->name();
    j["ncd"] = std::stod(fmt::format("{:.9f}", d));
    j["C(x)"] = c_len(*codec, bx, &cache).bits;
    j["C(y)"] = c_len(*codec, by, &cache).bits;
    j["C(y|x)"] = cond_c(*codec, by, bx, &cache);
    ctx.out << j.dump() << '\n';
  } else {
    ctx.out << fmt::format("{:.9f}\n", d);
  }
}

struct MatrixArgs {
  std::string codec = "huff0";
  std::string corpus;
  std::string diagnostics;
  bool clamp = false;
};

void cmd_matrix(Context& ctx, const MatrixArgs& a) {
  auto codec = make_codec(a.codec, ctx.config);
  auto corpus = load_corpus(a.corpus);
  SizeCache cache;
  auto m = distance_matrix(*codec, corpus, {ctx.worker_count(), a.clamp, std::nullopt}, &cache);
  ctx.out << (ctx.format == "json" ? m.symmetric.to_json() + "\n" : m.symmetric.to_csv());
  if (!a.diagnostics.empty()) {
    std::ofstream f(a.diagnostics);
    if (!f) throw Error(ErrorKind::ingestion, "cannot write '" + a.diagnostics + "'");
    f << metric_report(m.directed).to_json() << '\n';
  }
}

struct ClusterArgs {
  std::string input;
  bool newick = false;
  bool json = false;
};

void cmd_cluster(Context& ctx, const ClusterArgs& a) {
  auto text = a.input.empty() || a.input == "-" ? read_all(ctx.in) : read_file(a.input);
  auto tree = upgma(DistanceMatrix::parse(text));
  if (a.json || (!a.newick && ctx.format == "json"))
    ctx.out << to_json(tree) << '\n';
  else
    ctx.out << to_newick(tree) << '\n';
}

struct MlTestArgs {
  std::string test = "zero-prefix";
  std::string x;
  std::string alpha = "2/3";
  int max_level = -1;
  bool deficiency = false;
  std::string codec = "huff0";
  std::string file, text;
};

void cmd_mltest(Context& ctx, const MlTestArgs& a) {
  if (a.deficiency) {
    auto codec = make_codec(a.codec, ctx.config);
    auto data = !a.file.empty() ? read_file(a.file) : a.text;
    auto d = deficiency(*codec, as_bytes(data));
    if (ctx.format == "json")
      ctx.out << nlohmann::ordered_json({{"codec", codec->name()}, {"bytes", data.size()}, {"deficiency", d}}).dump() << '\n';
    else
      ctx.out << "deficiency = " << d << '\n';
    return;
  }
  auto test = make_test(a.test, parse_rational(a.alpha));
  auto x = BitString::from_text(a.x);
  unsigned top = a.max_level >= 0 ? static_cast<unsigned>(a.max_level) : static_cast<unsigned>(x.size());
  // Highest level reached: the largest m with x in V_m.
  int reached = -1;
  std::vector<bool> member;
  for (unsigned m = 0; m <= top; ++m) {
    member.push_back(test.member(m, x));
    if (member.back()) reached = static_cast<int>(m);
  }
  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["test"] = test.name;
    j["x"] = a.x;
    j["member"] = member;
    j["highest_level"] = reached;
    ctx.out << j.dump() << '\n';
  } else {
    ctx.out << fmt::format("{:>4}  {}\n", "m", "member");
    for (unsigned m = 0; m <= top; ++m) ctx.out << fmt::format("{:>4}  {}\n", m, member[m] ? "yes" : "no");
    ctx.out << "highest level = " << reached << '\n';
  }
}

struct CensusArgs {
  std::string test = "zero-prefix";
  unsigned n = 10;
  int max_level = -1;
  std::string alpha = "2/3";
  std::string codec = "huff0";
  std::string packing = "packed";
};

void cmd_census(Context& ctx, const CensusArgs& a) {
  if (a.n > ctx.config.census_max_n)
    throw Error(ErrorKind::resource_limit, fmt::format("census length {} exceeds the configured cap {}", a.n, ctx.config.census_max_n));
  if (a.test == "incompressible") {
    IncompressibilityReport r;
    if (a.codec == "toy") {
      r = incompressibility_census("toy", [](const BitString& x) { return std::uint64_t{k_exact(x)}; }, a.n, a.n,
                                   ctx.worker_count());
    } else {
      if (a.packing != "packed" && a.packing != "byte") throw Error(ErrorKind::invalid_parameter, "--packing must be packed or byte");
      auto codec = make_codec(a.codec, ctx.config);
      r = incompressibility_census(*codec, a.n, a.packing == "packed" ? BitPacking::packed : BitPacking::byte_per_bit,
                                   ctx.worker_count());
    }
    if (ctx.format == "json") {
      ctx.out << r.to_json() << '\n';
      return;
    }
    ctx.out << fmt::format("source = {}, n = {}, N = {} raw bits\n", r.source, r.n, r.raw);
    ctx.out << fmt::format("{:>4}  {:>12}  {:>24}  {}\n", "c", "size<N-c", "2^(N-c)-1", "incompressible");
    for (const auto& row : r.rows)
      ctx.out << fmt::format("{:>4}  {:>12}  {:>24}  {}\n", row.c, row.compressible, row.bound.str(),
                             rational_text(r.incompressible_fraction(row.c)));
    ctx.out << "bound holds: " << (r.all_within_bound() ? "yes" : "NO") << '\n';
    return;
  }

  auto test = make_test(a.test, parse_rational(a.alpha));
  unsigned top = a.max_level >= 0 ? static_cast<unsigned>(a.max_level) : a.n;
  auto r = census(test, a.n, top, ctx.worker_count());
  if (ctx.format == "json") {
    ctx.out << r.to_json() << '\n';
    return;
  }
  const bool mirror = a.test == "mirror-ends";
  ctx.out << fmt::format("test = {}, n = {}\n", r.test, r.n);
  ctx.out << fmt::format("{:>4}  {:>8}  {:>8}  {:>12}  {}\n", "m", "members", "total", "proportion",
                         mirror ? "2^-2m  (equal?)" : "");
  for (const auto& l : r.levels) {
    std::string extra;
    if (mirror) {
      Rational claimed(BigInt(1), BigInt(1) << (2 * l.m));
      if (2 * l.m > r.n) claimed = 0;
      extra = fmt::format("{}  ({})", rational_text(claimed), claimed == l.proportion() ? "yes" : "no");
    }
    ctx.out << fmt::format("{:>4}  {:>8}  {:>8}  {:>12}  {}\n", l.m, l.members, l.total, rational_text(l.proportion()), extra);
  }
  if (a.test == "zero-excess") ctx.out << fmt::format("fitted gamma = {:.6f}\n", fit_gamma(r));
}

struct ToyArgs {
  std::string x;
  std::size_t cap = 0;
  std::optional<std::uint64_t> budget;
};

void cmd_toyk(Context& ctx, const ToyArgs& a) {
  auto x = BitString::from_text(a.x);
  if (a.budget) {
    auto f = k_upper(x, a.cap, *a.budget);
    ctx.out << (ctx.format == "json" ? nlohmann::ordered_json({{"t", *a.budget}, {"F", f}}).dump() : fmt::format("F(x,{}) = {}", *a.budget, f))
            << '\n';
    return;
  }
  auto trace = upper_bound_trace(x, a.cap);
  std::optional<std::size_t> exact;
  if (x.size() <= ctx.config.toyk_max_length) exact = k_exact(x, ctx.config.toyk_max_length);
  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["x"] = a.x;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : trace.rows) rows.push_back({r.budget, r.bound});
    j["trace"] = rows;
    j["exact"] = exact ? nlohmann::ordered_json(*exact) : nlohmann::ordered_json(nullptr);
    ctx.out << j.dump() << '\n';
    return;
  }
  ctx.out << trace.to_text();
  if (exact)
    ctx.out << "K_toy(x) = " << *exact << "  (program " << shortest_program(x).to_string() << ")\n";
  else
    ctx.out << "K_toy(x): |x| exceeds the exhaustive limit\n";
}

struct NgdIndexArgs {
  std::string corpus, out;
};

void cmd_ngd_index(Context& ctx, const NgdIndexArgs& a) {
  auto index = HitIndex::from_directory(a.corpus);
  if (a.out.empty() || a.out == "-") {
    ctx.out << index.to_json() << '\n';
    return;
  }
  std::ofstream f(a.out);
  if (!f) throw Error(ErrorKind::ingestion, "cannot write '" + a.out + "'");
  f << index.to_json() << '\n';
  ctx.out << fmt::format("indexed {} documents into {}\n", index.document_count(), a.out);
}

HitIndex load_index(const std::string& path) { return HitIndex::from_json(read_file(path)); }

std::string ngd_text(double v) { return std::isinf(v) ? "inf" : fmt::format("{:.9f}", v); }

struct NgdArgs {
  std::string index;
  std::vector<std::string> terms;
};

void cmd_ngd(Context& ctx, const NgdArgs& a) {
  if (a.terms.size() != 2) throw Error(ErrorKind::invalid_parameter, "ngd takes exactly two terms");
  auto index = load_index(a.index);
  double d = ngd(index, a.terms[0], a.terms[1]);
  if (ctx.format == "json") {
    nlohmann::ordered_json j;
    j["x"] = a.terms[0];
    j["y"] = a.terms[1];
    j["f(x)"] = index.hits(a.terms[0]);
    j["f(y)"] = index.hits(a.terms[1]);
    j["f(x,y)"] = index.hits(std::vector<std::string>{a.terms[0], a.terms[1]});
    j["M"] = index.document_count();
    if (std::isinf(d))
      j["ngd"] = "inf";
    else
      j["ngd"] = std::stod(ngd_text(d));
    ctx.out << j.dump() << '\n';
  } else {
    ctx.out << ngd_text(d) << '\n';
  }
}

struct NgdMatrixArgs {
  std::string index, terms;
};

void cmd_ngd_matrix(Context& ctx, const NgdMatrixArgs& a) {
  auto index = load_index(a.index);
  auto r = ngd_matrix(index, split(a.terms, ','));
  for (const auto& s : r.skipped) ctx.err << "skipped unknown term: " << s << '\n';
  ctx.out << (ctx.format == "json" ? r.matrix.to_json() + "\n" : r.matrix.to_csv());
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prefix and enumerative coding, compression distances, clustering and randomness censuses", "kolmo"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format;
  std::optional<unsigned> workers;
  app.add_option("--config", config_path, "Toolkit config file (JSON); defaults to $KOLMO_CONFIG");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--workers", workers, "Worker threads for matrices and censuses")->check(CLI::PositiveNumber);

  EntropyArgs entropy_args;
  auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy of counts, probabilities or text");
  auto* src = entropy_cmd->add_option_group("source")->require_option(1);
  src->add_option("--counts", entropy_args.counts, "Comma-separated counts");
  src->add_option("--probs", entropy_args.probs, "Comma-separated probabilities (decimals or a/b)");
  src->add_option("--text", entropy_args.text, "Literal text");
  src->add_option("--file", entropy_args.file, "File whose bytes are the symbols");

  HuffmanArgs huffman_args;
  auto* huffman_cmd = app.add_subcommand("huffman", "Canonical Huffman code");
  auto* hsrc = huffman_cmd->add_option_group("source")->require_option(1);
  hsrc->add_option("--counts", huffman_args.counts, "symbol:count,...");
  hsrc->add_option("--text", huffman_args.text, "Literal text");
  hsrc->add_option("--file", huffman_args.file, "File whose bytes are the symbols");
  huffman_cmd->add_flag("--encode", huffman_args.encode, "Also print the encoded text");

  EnumArgs enum_args;
  auto* enum_cmd = app.add_subcommand("enumcode", "Enumerative (counts + rank) code");
  enum_cmd->add_option("--alphabet", enum_args.alphabet, "Symbols in order, e.g. 01")->required();
  auto* emode = enum_cmd->add_option_group("mode")->require_option(1);
  auto* enc_opt = emode->add_option("--encode", enum_args.encode, "Word to encode");
  emode->add_option("--decode", enum_args.decode, "Bits to decode");

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Self-delimiting packing of bit strings");
  pack_cmd->add_option("--scheme", pack_args.scheme, "unary or len")->check(CLI::IsMember({"unary", "len"}));
  pack_cmd->add_option("--part", pack_args.parts, "A part (repeatable)");
  pack_cmd->add_option("--tail", pack_args.tail, "Tail bits");
  auto* unpack_opt = pack_cmd->add_option("--unpack", pack_args.unpack, "Bits to unpack");
  pack_cmd->add_option("--count", pack_args.count, "Number of parts when unpacking");

  NcdArgs ncd_args;
  auto* ncd_cmd = app.add_subcommand("ncd", "Normalized compression distance of two inputs");
  ncd_cmd->add_option("--codec", ncd_args.codec, "huff0, lz77, identity or a configured external codec");
  ncd_cmd->add_option("files", ncd_args.files, "Two files");
  ncd_cmd->add_option("--x", ncd_args.x, "First input as text");
  ncd_cmd->add_option("--y", ncd_args.y, "Second input as text");
  ncd_cmd->add_flag("--clamp", ncd_args.clamp, "Clamp to [0,1]");

  MatrixArgs matrix_args;
  auto* matrix_cmd = app.add_subcommand("matrix", "NCD matrix of a corpus directory");
  matrix_cmd->add_option("--codec", matrix_args.codec, "Codec name");
  matrix_cmd->add_option("--corpus", matrix_args.corpus, "Directory of items")->required();
  matrix_cmd->add_option("--diagnostics", matrix_args.diagnostics, "Write metric diagnostics (JSON) here");
  matrix_cmd->add_flag("--clamp", matrix_args.clamp, "Clamp to [0,1]");

  ClusterArgs cluster_args;
  auto* cluster_cmd = app.add_subcommand("cluster", "UPGMA tree from a distance matrix (CSV or JSON)");
  cluster_cmd->add_option("--input", cluster_args.input, "Matrix file; standard input when omitted");
  cluster_cmd->add_flag("--newick", cluster_args.newick, "Newick output (default)");
  cluster_cmd->add_flag("--json", cluster_args.json, "JSON tree output");

  MlTestArgs ml_args;
  auto* ml_cmd = app.add_subcommand("mltest", "Critical-region membership of a bit string, or codec deficiency");
  ml_cmd->add_option("--test", ml_args.test, "zero-prefix, mirror-ends or zero-excess");
  ml_cmd->add_option("--x", ml_args.x, "Bit string");
  ml_cmd->add_option("--alpha", ml_args.alpha, "alpha for zero-excess (e.g. 2/3)");
  ml_cmd->add_option("--max-level", ml_args.max_level, "Highest level to evaluate");
  ml_cmd->add_flag("--deficiency", ml_args.deficiency, "Report 8|x| - C(x) - 1 instead");
  ml_cmd->add_option("--codec", ml_args.codec, "Codec for --deficiency");
  ml_cmd->add_option("--file", ml_args.file, "Input file for --deficiency");
  ml_cmd->add_option("--text", ml_args.text, "Input text for --deficiency");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "Exhaustive census over all bit strings of length n");
  census_cmd->add_option("--test", census_args.test, "zero-prefix, mirror-ends, zero-excess or incompressible")
      ->check(CLI::IsMember({"zero-prefix", "mirror-ends", "zero-excess", "incompressible"}));
  census_cmd->add_option("--n", census_args.n, "String length")->required();
  census_cmd->add_option("--max-level", census_args.max_level, "Highest level m (default n)");
  census_cmd->add_option("--alpha", census_args.alpha, "alpha for zero-excess");
  census_cmd->add_option("--codec", census_args.codec, "Codec for incompressible (or 'toy')");
  census_cmd->add_option("--packing", census_args.packing, "packed or byte");

  ToyArgs toy_args;
  auto* toy_cmd = app.add_subcommand("toyk", "Toy-machine complexity: upper-bound trace and exact value");
  toy_cmd->add_option("--x", toy_args.x, "Target bit string")->required();
  toy_cmd->add_option("--cap", toy_args.cap, "Program length cap (default |x|+1)");
  toy_cmd->add_option("--budget", toy_args.budget, "Single step budget instead of the trace");

  NgdIndexArgs ngd_index_args;
  auto* ngd_index_cmd = app.add_subcommand("ngd-index", "Build a document-frequency index from a directory");
  ngd_index_cmd->add_option("--corpus", ngd_index_args.corpus, "Directory of text files")->required();
  ngd_index_cmd->add_option("--out", ngd_index_args.out, "Index file (standard output when omitted)");

  NgdArgs ngd_args;
  auto* ngd_cmd = app.add_subcommand("ngd", "Normalized Google distance of two terms");
  ngd_cmd->add_option("--index", ngd_args.index, "Index file")->required();
  ngd_cmd->add_option("terms", ngd_args.terms, "Two terms")->expected(2);

  NgdMatrixArgs ngd_matrix_args;
  auto* ngd_matrix_cmd = app.add_subcommand("ngd-matrix", "NGD matrix over a term list");
  ngd_matrix_cmd->add_option("--index", ngd_matrix_args.index, "Index file")->required();
  ngd_matrix_cmd->add_option("--terms", ngd_matrix_args.terms, "Comma-separated terms")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "kolmo: " << e.what() << "\n\n" << app.help();
    return ExitCode::usage;
  }

  try {
    Context ctx{in, out, err, ToolkitConfig::load(config_path.empty() ? std::nullopt
                                                                      : std::optional<std::filesystem::path>(config_path)),
                "", workers};
    ctx.format = format.empty() ? ctx.config.format : format;

    if (entropy_cmd->parsed()) cmd_entropy(ctx, entropy_args);
    else if (huffman_cmd->parsed()) cmd_huffman(ctx, huffman_args);
    else if (enum_cmd->parsed()) {
      enum_args.has_encode = enc_opt->count() > 0;
      cmd_enumcode(ctx, enum_args);
    } else if (pack_cmd->parsed()) {
      pack_args.has_unpack = unpack_opt->count() > 0;
      cmd_pack(ctx, pack_args);
    } else if (ncd_cmd->parsed()) cmd_ncd(ctx, ncd_args);
    else if (matrix_cmd->parsed()) cmd_matrix(ctx, matrix_args);
    else if (cluster_cmd->parsed()) cmd_cluster(ctx, cluster_args);
    else if (ml_cmd->parsed()) cmd_mltest(ctx, ml_args);
    else if (census_cmd->parsed()) cmd_census(ctx, census_args);
    else if (toy_cmd->parsed()) cmd_toyk(ctx, toy_args);
    else if (ngd_index_cmd->parsed()) cmd_ngd_index(ctx, ngd_index_args);
    else if (ngd_cmd->parsed()) cmd_ngd(ctx, ngd_args);
    else if (ngd_matrix_cmd->parsed()) cmd_ngd_matrix(ctx, ngd_matrix_args);
  } catch (const Error& e) {
    err << "kolmo: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::external_tool ? ExitCode::external_tool : ExitCode::data;
  }
  return ExitCode::ok;
}

}  // namespace kolmo::cli
