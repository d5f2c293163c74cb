#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "kolmo/cluster.hpp"
#include "kolmo/coding.hpp"
#include "kolmo/compressors.hpp"
#include "kolmo/entropy.hpp"
#include "kolmo/error.hpp"
#include "kolmo/ncd.hpp"
#include "kolmo/ngd.hpp"
#include "kolmo/randomness.hpp"
#include "kolmo/toy_k.hpp"

namespace py = pybind11;
using namespace kolmo;

namespace {

BitString bits_of(const std::string& text) { return BitString::from_text(text); }

ByteView view_of(const py::bytes& b, std::string& storage) {
  storage = b;
  return as_bytes(storage);
}

std::unique_ptr<Codec> codec_named(const std::string& name) {
  if (auto c = make_internal_codec(name)) return c;
  throw Error(ErrorKind::invalid_parameter, "unknown codec '" + name + "'");
}

DistanceMatrix matrix_of(const std::vector<std::string>& items, const std::vector<std::vector<double>>& values) {
  DistanceMatrix m(items);
  if (values.size() != items.size()) throw Error(ErrorKind::invalid_format, "matrix row count differs from item count");
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (values[i].size() != items.size()) throw Error(ErrorKind::invalid_format, "matrix is not square");
    for (std::size_t j = 0; j < items.size(); ++j) m.at(i, j) = values[i][j];
  }
  return m;
}

py::dict matrix_dict(const DistanceMatrix& m) {
  std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m.at(i, j);
  py::dict d;
  d["items"] = m.items();
  d["values"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coding, compression distances, randomness censuses and a toy complexity machine.";

  // Owned by the module for the interpreter's lifetime.
  static PyObject* error_type = py::exception<Error>(m, "KolmoError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto type = py::reinterpret_borrow<py::object>(error_type);
      py::object err = type(std::string(to_string(e.kind())) + ": " + e.what());
      err.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  // Numerals and codes.
  m.def("kadic_encode", [](std::uint64_t n, std::uint32_t k) { return kadic_to_text(kadic_encode(n, k)); },
        py::arg("n"), py::arg("k"), "k-adic numeral of n as text (digits 1..k).");
  m.def("kadic_decode", [](const std::string& text, std::uint32_t k) { return kadic_decode(kadic_from_text(text), k); },
        py::arg("numeral"), py::arg("k"));
  m.def("kraft_sum", [](const std::vector<unsigned>& lengths) {
    auto r = kraft_sum(lengths);
    return py::make_tuple(numerator(r).str(), denominator(r).str());
  }, py::arg("lengths"), "Kraft sum as a (numerator, denominator) pair of decimal strings.");
  m.def("kraft_construct", [](const std::vector<unsigned>& lengths) -> std::optional<std::vector<std::string>> {
    auto words = kraft_construct(lengths);
    if (!words) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& w : *words) out.push_back(w.to_string());
    return out;
  }, py::arg("lengths"), "Prefix codewords with these lengths, or None when the Kraft sum exceeds one.");
  m.def("huffman_code", [](const std::map<std::string, std::uint64_t>& counts) {
    FrequencyTable t;
    for (const auto& [s, c] : counts) {
      t.symbols.push_back(s);
      t.counts.push_back(c);
    }
    auto code = huffman_build(t);
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < code.alphabet().size(); ++i) out[code.alphabet()[i]] = code.codewords()[i].to_string();
    return out;
  }, py::arg("counts"), "Canonical Huffman code for a {symbol: count} table.");
  m.def("pack_len", [](const std::vector<std::string>& parts, const std::string& tail) {
    std::vector<BitString> ps;
    for (const auto& p : parts) ps.push_back(bits_of(p));
    return pair_pack_len(ps, bits_of(tail)).to_string();
  }, py::arg("parts"), py::arg("tail") = "");
  m.def("unpack_len", [](const std::string& packed, std::size_t count) {
    auto p = pair_unpack_len(bits_of(packed), count);
    std::vector<std::string> parts;
    for (const auto& b : p.parts) parts.push_back(b.to_string());
    return py::make_tuple(parts, p.tail.to_string());
  }, py::arg("packed"), py::arg("count"));

  // Entropy and enumerative coding.
  m.def("entropy", [](const std::vector<double>& probs) { return entropy(probs); }, py::arg("probabilities"));
  m.def("entropy_of_counts", [](const std::vector<std::uint64_t>& c) { return entropy_of_counts(c); }, py::arg("counts"));
  m.def("class_size", [](const std::vector<std::uint64_t>& c) { return py::int_(py::str(class_size(c).str())); },
        py::arg("counts"));
  m.def("enum_encode", [](const std::string& word, const std::string& alphabet) {
    return enum_encode(word, alphabet).to_string();
  }, py::arg("word"), py::arg("alphabet"));
  m.def("enum_decode", [](const std::string& bits, const std::string& alphabet) {
    return enum_decode(bits_of(bits), alphabet);
  }, py::arg("bits"), py::arg("alphabet"));

  // Compressors and distances.
  m.def("compressed_size", [](const std::string& codec, const py::bytes& data) {
    std::string buf;
    return codec_named(codec)->size(view_of(data, buf)).bits;
  }, py::arg("codec"), py::arg("data"), "Compressed size in bits under huff0, lz77 or identity.");
  m.def("ncd", [](const std::string& codec, const py::bytes& x, const py::bytes& y, bool clamp) {
    std::string bx, by;
    auto c = codec_named(codec);
    return ncd(*c, view_of(x, bx), view_of(y, by), NcdOptions{clamp});
  }, py::arg("codec"), py::arg("x"), py::arg("y"), py::arg("clamp") = false);
  m.def("distance_matrix", [](const std::string& codec, const std::vector<std::pair<std::string, py::bytes>>& items,
                              unsigned workers) {
    Corpus corpus;
    for (const auto& [name, payload] : items) {
      std::string s = payload;
      corpus.push_back({name, Bytes(s.begin(), s.end())});
    }
    auto c = codec_named(codec);
    NcdMatrices result;
    {
      py::gil_scoped_release release;
      result = distance_matrix(*c, corpus, {.workers = workers});
    }
    return matrix_dict(result.symmetric);
  }, py::arg("codec"), py::arg("items"), py::arg("workers") = 1,
     "Symmetric NCD matrix over (name, bytes) items, as {items, values}.");
  m.def("upgma_newick", [](const std::vector<std::string>& items, const std::vector<std::vector<double>>& values) {
    return to_newick(upgma(matrix_of(items, values)));
  }, py::arg("items"), py::arg("values"));

  // Randomness.
  m.def("census", [](const std::string& test, unsigned n, std::optional<unsigned> max_level,
                     std::pair<std::int64_t, std::int64_t> alpha) {
    if (alpha.second <= 0) throw Error(ErrorKind::invalid_parameter, "alpha denominator must be positive");
    auto report = census(make_test(test, Rational(alpha.first, alpha.second)), n, max_level.value_or(n));
    py::list levels;
    for (const auto& l : report.levels) levels.append(py::make_tuple(l.m, l.members, l.total));
    return levels;
  }, py::arg("test"), py::arg("n"), py::arg("max_level") = py::none(), py::arg("alpha") = std::pair<std::int64_t, std::int64_t>(2, 3),
     "Exact census as a list of (m, members, total); alpha is a (numerator, denominator) pair.");
  m.def("deficiency", [](const std::string& codec, const py::bytes& data) {
    std::string buf;
    return deficiency(*codec_named(codec), view_of(data, buf));
  }, py::arg("codec"), py::arg("data"));

  // Toy machine.
  m.def("toy_decode", [](const std::string& program) -> std::optional<std::string> {
    auto r = ref_decode(bits_of(program));
    if (r.status != ToyStatus::ok) return std::nullopt;
    return r.output.to_string();
  }, py::arg("program"));
  m.def("k_exact", [](const std::string& x) { return k_exact(bits_of(x)); }, py::arg("x"));
  m.def("k_upper", [](const std::string& x, std::uint64_t budget, std::size_t cap) {
    return k_upper(bits_of(x), cap, budget);
  }, py::arg("x"), py::arg("budget"), py::arg("cap") = 0);
  m.def("shortest_program", [](const std::string& x) { return shortest_program(bits_of(x)).to_string(); },
        py::arg("x"));

  // NGD.
  py::class_<HitIndex>(m, "HitIndex")
      .def_static("build", [](const std::vector<std::pair<std::string, std::string>>& docs) {
        std::vector<Document> d;
        for (const auto& [name, text] : docs) d.push_back({name, text});
        return HitIndex::build(d);
      }, py::arg("documents"), "Index a list of (name, text) documents.")
      .def_static("from_directory", [](const std::string& dir) { return HitIndex::from_directory(dir); })
      .def_static("from_json", &HitIndex::from_json)
      .def("to_json", &HitIndex::to_json)
      .def_property_readonly("document_count", &HitIndex::document_count)
      .def("hits", [](const HitIndex& idx, const std::vector<std::string>& terms) { return idx.hits(terms); })
      .def("ngd", [](const HitIndex& idx, const std::string& x, const std::string& y) { return ngd(idx, x, y); });
  m.def("ngd_from_counts", &ngd_from_counts, py::arg("fx"), py::arg("fy"), py::arg("fxy"), py::arg("m"));
}
