#pragma once

// JSON encoding of fields, matrices, representations, verdicts and reports.
// All scalars are exact strings.

#include <json.hpp>

#include "adhm/monad/monad.hpp"
#include "adhm/plane/plane.hpp"
#include "adhm/stability/filtration.hpp"
#include "adhm/stability/kronecker.hpp"
#include "adhm/stability/w0.hpp"

namespace adhm {

using json = nlohmann::ordered_json;

inline json field_to_json(const FieldSpec& s) {
  if (!s.is_finite()) return {{"type", "Q"}};
  return {{"type", "GF"}, {"p", s.p}, {"k", s.k}};
}

/// Accepts {"type":"Q"}, {"type":"GF","p":..,"k":..} or a name such as "GF3^2".
inline FieldSpec field_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_field_name(j.get<std::string>());
    const std::string type = j.at("type").get<std::string>();
    if (type == "Q") return FieldSpec::rationals();
    if (type == "GF") return FieldSpec::finite(j.at("p").get<std::uint32_t>(), j.value("k", 1U));
  } catch (const json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("bad field: ") + e.what());
  }
  raise(ErrorCode::MalformedInput, "unknown field type");
}

template <class F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t a = 0; a < m.rows(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m.field().to_string(m(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace io_detail {

template <class F>
typename F::Elem scalar_from_json(const F& f, const json& v) {
  if (v.is_string()) return f.parse(v.get<std::string>());
  if (v.is_number_integer()) return f.from_int(v.get<long long>());
  raise(ErrorCode::MalformedInput, "scalars must be strings or integers");
}

}  // namespace io_detail

/// Reads a rows × cols matrix; a missing key is the zero matrix only when it is empty.
template <class F>
Matrix<F> matrix_from_json(const F& f, const json& obj, const char* key, std::size_t rows, std::size_t cols) {
  Matrix<F> m(f, rows, cols);
  if (!obj.contains(key)) {
    require(rows * cols == 0, ErrorCode::MalformedInput, std::string("missing matrix ") + key);
    return m;
  }
  const json& v = obj.at(key);
  require(v.is_array(), ErrorCode::MalformedInput, std::string(key) + " must be a list of rows");
  if (rows * cols == 0 && v.empty()) return m;
  require(v.size() == rows, ErrorCode::MalformedInput, std::string(key) + " has the wrong number of rows");
  for (std::size_t a = 0; a < rows; ++a) {
    require(v[a].is_array() && v[a].size() == cols, ErrorCode::MalformedInput,
            std::string(key) + " has the wrong number of columns");
    for (std::size_t b = 0; b < cols; ++b) m(a, b) = io_detail::scalar_from_json(f, v[a][b]);
  }
  return m;
}

template <class F>
json rep_to_json(const BlowupRep<F>& x) {
  return {{"field", field_to_json(x.field.spec())},
          {"dims", {{"v0", x.n0}, {"v1", x.n1}, {"w", x.r}}},
          {"B1", matrix_to_json(x.B1)},
          {"B2", matrix_to_json(x.B2)},
          {"d", matrix_to_json(x.d)},
          {"i", matrix_to_json(x.i)},
          {"j", matrix_to_json(x.j)}};
}

inline Dims dims_from_json(const json& j) {
  try {
    const json& d = j.at("dims");
    return {d.at("v0").get<std::size_t>(), d.at("v1").get<std::size_t>(), d.value("w", std::size_t{0})};
  } catch (const json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("bad dims: ") + e.what());
  }
}

template <class F>
BlowupRep<F> rep_from_json(const F& f, const json& j) {
  const Dims dims = dims_from_json(j);
  BlowupRep<F> x = BlowupRep<F>::zero(f, dims);
  x.B1 = matrix_from_json(f, j, "B1", dims.n0, dims.n1);
  x.B2 = matrix_from_json(f, j, "B2", dims.n0, dims.n1);
  x.d = matrix_from_json(f, j, "d", dims.n1, dims.n0);
  x.i = matrix_from_json(f, j, "i", dims.n0, dims.r);
  x.j = matrix_from_json(f, j, "j", dims.r, dims.n1);
  return x;
}

template <class F>
json plane_to_json(const PlaneADHM<F>& a) {
  return {{"field", field_to_json(a.field.spec())},
          {"dims", {{"v", a.n}, {"w", a.r}}},
          {"B1", matrix_to_json(a.B1)},
          {"B2", matrix_to_json(a.B2)},
          {"i", matrix_to_json(a.i)},
          {"j", matrix_to_json(a.j)}};
}

template <class F>
PlaneADHM<F> plane_from_json(const F& f, const json& j) {
  std::size_t n = 0, r = 0;
  try {
    n = j.at("dims").at("v").get<std::size_t>();
    r = j.at("dims").value("w", std::size_t{0});
  } catch (const json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("bad dims: ") + e.what());
  }
  return {f, n, r, matrix_from_json(f, j, "B1", n, n), matrix_from_json(f, j, "B2", n, n),
          matrix_from_json(f, j, "i", n, r), matrix_from_json(f, j, "j", r, n)};
}

template <class F>
json subspace_to_json(const Subspace<F>& s) {
  return {{"ambient", s.ambient()}, {"basis", matrix_to_json(s.basis())}};
}

template <class F>
json pair_to_json(const SubrepPair<F>& p) {
  return {{"S0", subspace_to_json(p.S0)}, {"S1", subspace_to_json(p.S1)}, {"sInf", p.sInf}};
}

inline json zeta_to_json(const StabilityParam& z) { return {{"zeta0", z.zeta0.get_str()}, {"zeta1", z.zeta1.get_str()}}; }

template <class F>
json verdict_to_json(const StabilityVerdict<F>& v) {
  json j = {{"status", to_string(v.status)}, {"method", to_string(v.method)}};
  j["witness"] = v.witness ? pair_to_json(*v.witness) : json(nullptr);
  if (v.probabilistic) j["probabilistic"] = true;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

template <class F>
json filtration_to_json(const Filtration<F>& f) {
  json steps = json::array(), slopes = json::array();
  for (const auto& s : f.steps)
    steps.push_back({{"dims", {s.S0.dim(), s.S1.dim(), s.sInf}}, {"pair", pair_to_json(s)}});
  for (const auto& s : f.slopes) slopes.push_back(s.get_str());
  return {{"steps", steps}, {"slopes", slopes}};
}

template <class F>
json kronecker_to_json(const F& f, const KroneckerDecomposition<F>& d) {
  json blocks = json::array();
  for (const auto& b : d.blocks) {
    json jb = {{"kind", to_string(b.kind)}, {"m", b.m}};
    if (b.eigen) jb["eigen"] = f.to_string(*b.eigen);
    if (!b.poly.empty()) {
      json p = json::array();
      for (const auto& c : b.poly) p.push_back(f.to_string(c));
      jb["poly"] = p;
    }
    blocks.push_back(jb);
  }
  return {{"blocks", blocks}, {"P", matrix_to_json(d.P)}, {"Q", matrix_to_json(d.Q)}};
}

template <class F>
json point_to_json(const SurfacePoint<F>& p) {
  const F& f = p.field;
  return {{"p2", {f.to_string(p.z0), f.to_string(p.z1), f.to_string(p.z2)}},
          {"p1", {f.to_string(p.z), f.to_string(p.w)}}};
}

inline json fiber_to_json(const FiberCohomology& h) { return {h.hMinus, h.hZero, h.hPlus}; }

}  // namespace adhm
