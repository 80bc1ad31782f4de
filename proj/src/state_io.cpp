#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcorr/states.hpp"

namespace qcorr {

namespace {

using nlohmann::json;

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, "missing field \"" + key + "\"");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

Ket parse_ket(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ParseError(path, "expected a non-empty array of [re, im] pairs");
  ComplexVector amp(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const json& pair = v[i];
    if (!pair.is_array() || pair.size() != 2) throw ParseError(p, "expected [re, im]");
    amp(static_cast<Eigen::Index>(i)) = Complex(number(pair[0], p + "/0"), number(pair[1], p + "/1"));
  }
  try {
    return Ket(std::move(amp));
  } catch (const InvalidSpec& e) {
    throw InvalidSpec(path + ": " + e.what());
  }
}

ProductMixtureSpec parse_mixture(const json& v) {
  const std::string base = "/product_mixture";
  const json& terms = member(v, "terms", base);
  if (!terms.is_array() || terms.empty()) throw ParseError(base + "/terms", "expected a non-empty array");
  ProductMixtureSpec spec;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string p = base + "/terms/" + std::to_string(k);
    const double w = number(member(terms[k], "p", p), p + "/p");
    Ket a = parse_ket(member(terms[k], "a", p), p + "/a");
    Ket b = parse_ket(member(terms[k], "b", p), p + "/b");
    spec.terms.push_back(MixtureTerm{w, std::move(a), std::move(b)});
  }
  return spec;
}

DenseSpec parse_dense(const json& v) {
  const std::string base = "/dense";
  const json& dims = member(v, "dims", base);
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
    throw ParseError(base + "/dims", "expected [dA, dB] integers");
  }
  const Dims d{dims[0].get<int>(), dims[1].get<int>()};
  if (d.a < 1 || d.b < 1 || d.total() > kMaxTotalDim) {
    throw ParseError(base + "/dims", "dimensions must be positive with dA*dB <= 64");
  }
  const std::size_t n = static_cast<std::size_t>(d.total());
  const json& re = member(v, "re", base);
  const json& im = member(v, "im", base);
  for (const auto& [name, arr] : {std::pair<const char*, const json*>{"re", &re}, {"im", &im}}) {
    if (!arr->is_array() || arr->size() != n * n) {
      throw ParseError(base + "/" + name, "expected " + std::to_string(n * n) + " numbers");
    }
  }
  ComplexMatrix m(d.total(), d.total());
  for (std::size_t i = 0; i < n * n; ++i) {
    const std::string idx = std::to_string(i);
    m(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) =
        Complex(number(re[i], base + "/re/" + idx), number(im[i], base + "/im/" + idx));
  }
  return DenseSpec{d, std::move(m)};
}

json ket_json(const Ket& k) {
  json out = json::array();
  for (Eigen::Index i = 0; i < k.amplitudes().size(); ++i) {
    out.push_back({k.amplitudes()(i).real(), k.amplitudes()(i).imag()});
  }
  return out;
}

}  // namespace

StateSpec parse_state_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(json_text, e.byte)), "malformed JSON");
  }
  if (!doc.is_object() || doc.size() != 1) {
    throw ParseError("/", "expected exactly one of \"product_mixture\" or \"dense\"");
  }
  if (doc.contains("product_mixture")) return parse_mixture(doc["product_mixture"]);
  if (doc.contains("dense")) return parse_dense(doc["dense"]);
  throw ParseError("/" + doc.begin().key(), "unknown state kind");
}

DensityMatrix to_density_matrix(const StateSpec& spec) {
  if (const auto* mix = std::get_if<ProductMixtureSpec>(&spec)) return from_product_mixture(*mix);
  const auto& dense = std::get<DenseSpec>(spec);
  return DensityMatrix(dense.matrix, dense.dims);
}

DensityMatrix load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open state file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return to_density_matrix(parse_state_spec(buf.str()));
}

std::string serialize_state_spec(const StateSpec& spec) {
  json doc;
  if (const auto* mix = std::get_if<ProductMixtureSpec>(&spec)) {
    json terms = json::array();
    for (const MixtureTerm& t : mix->terms) {
      terms.push_back({{"p", t.p}, {"a", ket_json(t.a)}, {"b", ket_json(t.b)}});
    }
    doc["product_mixture"] = {{"terms", terms}};
  } else {
    const auto& dense = std::get<DenseSpec>(spec);
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < dense.matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < dense.matrix.cols(); ++c) {
        re.push_back(dense.matrix(r, c).real());
        im.push_back(dense.matrix(r, c).imag());
      }
    }
    doc["dense"] = {{"dims", {dense.dims.a, dense.dims.b}}, {"re", re}, {"im", im}};
  }
  return doc.dump(2) + "\n";
}

DenseSpec dense_spec(const DensityMatrix& rho) { return DenseSpec{rho.dims(), rho.matrix()}; }

}  // namespace qcorr
