#pragma once

// Command dispatch for the adhm tool: one JSON report per job.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "adhm/cli/sweep.hpp"

namespace adhm {

struct JobSpec {
  std::string command;
  std::optional<std::string> inputPath;
  std::map<std::string, std::string> params;
  std::optional<std::string> outputPath;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "mu",          "stability", "criteria",  "hn",         "jh",       "classify-w0",  "kronecker",
      "walls",       "chamber",   "scan-beta", "scan-alpha", "fibers",   "framing",      "perverse",
      "to-plane",    "c1-roundtrip", "enumerate", "blowup-point", "sweep"};
  return names;
}

namespace cli_detail {

inline std::optional<std::string> param(const JobSpec& job, const std::string& key) {
  auto it = job.params.find(key);
  if (it == job.params.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

inline std::string need(const JobSpec& job, const std::string& key) {
  auto v = param(job, key);
  if (!v) raise(ErrorCode::MalformedInput, "missing --" + key);
  return *v;
}

inline std::vector<long long> int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      raise(ErrorCode::MalformedInput, "expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

inline std::uint64_t uint_param(const JobSpec& job, const std::string& key, std::uint64_t fallback) {
  auto v = param(job, key);
  if (!v) return fallback;
  const auto xs = int_list(*v);
  require(xs.size() == 1 && xs[0] >= 0, ErrorCode::MalformedInput, "--" + key + " must be a nonnegative integer");
  return static_cast<std::uint64_t>(xs[0]);
}

inline bool bool_param(const JobSpec& job, const std::string& key, bool fallback) {
  auto v = param(job, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  raise(ErrorCode::MalformedInput, "--" + key + " must be true or false");
}

inline Dims dims_param(const JobSpec& job) {
  const auto xs = int_list(need(job, "dims"));
  require((xs.size() == 2 || xs.size() == 3) && std::all_of(xs.begin(), xs.end(), [](long long v) { return v >= 0; }),
          ErrorCode::MalformedInput, "--dims must be n0,n1[,r]");
  return {static_cast<std::size_t>(xs[0]), static_cast<std::size_t>(xs[1]),
          xs.size() == 3 ? static_cast<std::size_t>(xs[2]) : 0};
}

inline json read_input(const JobSpec& job) {
  if (!job.inputPath) raise(ErrorCode::MalformedInput, "missing --in");
  std::ifstream in(*job.inputPath);
  if (!in) raise(ErrorCode::MalformedInput, "cannot open " + *job.inputPath);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

inline ChernData chern_param(const JobSpec& job) {
  const auto r = int_list(need(job, "r")), k = int_list(need(job, "k"));
  require(r.size() == 1 && k.size() == 1, ErrorCode::MalformedInput, "--r and --k take one integer each");
  return {static_cast<long>(r[0]), static_cast<long>(k[0]), parse_rational(need(job, "n"))};
}

inline std::uint32_t ext_param(const JobSpec& job, const std::string& key, std::uint32_t fallback) {
  return static_cast<std::uint32_t>(uint_param(job, key, fallback));
}

inline SweepOptions bounds(const JobSpec& job) {
  SweepOptions o;
  o.rep_bound = uint_param(job, "max-tuples", o.rep_bound);
  o.subspace_bound = uint_param(job, "max-subspaces", o.subspace_bound);
  o.point_bound = uint_param(job, "max-points", o.point_bound);
  return o;
}

template <class F>
json finite_only() {
  raise(ErrorCode::UnsupportedField, "this command needs a finite field");
}

/// Commands whose input is a representation (or plane data) over F.
template <class F>
json run_on_input(const F& f, const JobSpec& job, const json& in) {
  const std::string& cmd = job.command;
  const SweepOptions opt = bounds(job);
  if (cmd == "c1-roundtrip") {
    const auto a = plane_from_json(f, in);
    json out = {{"stable", plane_stability(a, PlaneCondition::Stable).holds}};
    if (!out["stable"].get<bool>()) {
      out["roundtrip"] = false;
      return out;
    }
    const auto x = c1zero_lift(a);
    out["lift"] = rep_to_json(x);
    out["roundtrip"] = c1zero_roundtrip(a);
    return out;
  }
  const BlowupRep<F> x = rep_from_json(f, in);
  if (cmd == "mu") {
    return {{"residual", matrix_to_json(mu_residual(x))}, {"flat", is_flat(x)}};
  }
  if (cmd == "stability") {
    const auto zeta = StabilityParam::parse(need(job, "zeta"));
    return verdict_to_json(zeta_semistable(x, zeta, bool_param(job, "strict", true), opt.subspace_bound));
  }
  if (cmd == "criteria") {
    const auto zeta = StabilityParam::parse(need(job, "zeta"));
    return verdict_to_json(criteria_semistable(x, zeta));
  }
  if (cmd == "hn" || cmd == "jh") {
    if constexpr (!F::is_finite) {
      return finite_only<F>();
    } else {
      const auto zeta = StabilityParam::parse(need(job, "zeta"));
      NewQuiverRep<F> y = NewQuiverRep<F>::from(x);
      if (auto di = param(job, "dim-inf")) y.dimInf = static_cast<int>(uint_param(job, "dim-inf", 1));
      std::optional<Rational> zinf;
      if (auto z = param(job, "zeta-inf")) zinf = parse_rational(*z);
      const auto filt = cmd == "hn" ? hn_filtration(y, zeta, zinf, opt.subspace_bound)
                                    : jh_filtration(y, zeta, zinf, opt.subspace_bound);
      return filtration_to_json(filt);
    }
  }
  if (cmd == "kronecker") {
    return kronecker_to_json(f, kronecker_decompose(x.B1, x.B2));
  }
  if (cmd == "to-plane") {
    const std::string side = param(job, "side").value_or("left");
    require(side == "left" || side == "right", ErrorCode::MalformedInput, "--side must be left or right");
    const auto a = to_plane(x, side == "left" ? PlaneSide::Left : PlaneSide::Right);
    json coords = json::array();
    for (const auto& c : invariant_coords(a, uint_param(job, "word-length", 2))) coords.push_back(f.to_string(c));
    return {{"plane", plane_to_json(a)}, {"flat", is_flat(a)}, {"invariant_coords", coords}};
  }
  if (cmd == "perverse") {
    const auto rows = perverse_hom_profile(x, uint_param(job, "m-max", x.n0 + x.n1));
    json table = json::array();
    for (const auto& row : rows)
      table.push_back({{"n", row.n}, {"hom_to_Cn", row.hom_to_cn}, {"hom_from_Cn", row.hom_from_cn}});
    json out = {{"profile", table}};
    if (auto m = param(job, "chamber")) out["perverse"] = perverse_test(rows, uint_param(job, "chamber", 0));
    return out;
  }
  if constexpr (!F::is_finite) {
    return finite_only<F>();
  } else {
    std::optional<std::uint32_t> ext;
    if (param(job, "max-ext")) ext = ext_param(job, "max-ext", 1);
    if (cmd == "scan-beta") {
      const auto r = scan_beta(x, ext, opt.point_bound);
      if (r.surjective_everywhere) return {{"result", "surjective_everywhere"}};
      return {{"result", "fails_at"}, {"point", point_to_json(*r.fails_at)}};
    }
    if (cmd == "scan-alpha") {
      const auto r = scan_alpha(x, ext, opt.point_bound);
      json pts = json::array();
      for (const auto& p : r.failures) pts.push_back(point_to_json(p));
      return {{"result", to_string(r.kind)}, {"failures", pts}};
    }
    if (cmd == "fibers") {
      const auto pts = enumerate_points(x.field, ext_param(job, "ext", 1), opt.point_bound);
      const auto prof = fiber_profile(x, pts);
      json entries = json::array();
      for (const auto& [p, h] : prof.entries) entries.push_back({{"point", point_to_json(p)}, {"h", fiber_to_json(h)}});
      return {{"euler_constant", prof.euler_constant()}, {"entries", entries}};
    }
    if (cmd == "framing") {
      return {{"framed", framing_check(x, ext, opt.point_bound)}};
    }
  }
  raise(ErrorCode::MalformedInput, "unknown command '" + cmd + "'");
}

/// Commands parameterized by flags only.
template <class F>
json run_on_flags(const F& f, const JobSpec& job) {
  const std::string& cmd = job.command;
  const SweepOptions opt = bounds(job);
  if constexpr (!F::is_finite) {
    return finite_only<F>();
  } else {
    if (cmd == "enumerate") {
      const Dims dims = dims_param(job);
      const bool flat = bool_param(job, "flat", true);
      const bool list = bool_param(job, "list", false);
      std::uint64_t count = 0;
      json reps = json::array();
      visit_reps<F>(
          dims, f, flat,
          [&](const BlowupRep<F>& x) {
            ++count;
            if (list) reps.push_back(rep_to_json(x));
            return true;
          },
          opt.rep_bound);
      json out = {{"count", count}};
      if (list) out["reps"] = reps;
      return out;
    }
    if (cmd == "sweep") {
      const Dims dims = dims_param(job);
      const auto zeta = StabilityParam::parse(need(job, "zeta"));
      return sweep(dims, f, zeta, need(job, "assert"), opt).to_json();
    }
    if (cmd == "blowup-point") {
      if (auto t = param(job, "triple")) {
        const auto xs = int_list(*t);
        require(xs.size() == 3, ErrorCode::MalformedInput, "--triple must be b1,b2,d");
        const auto p = blowup_point_forward(f, f.from_int(xs[0]), f.from_int(xs[1]), f.from_int(xs[2]));
        return {{"z1", f.to_string(p.z1)}, {"z2", f.to_string(p.z2)}, {"p1", {f.to_string(p.z), f.to_string(p.w)}}};
      }
      const auto xs = int_list(need(job, "point"));
      require(xs.size() == 4, ErrorCode::MalformedInput, "--point must be z1,z2,z,w");
      const BlownUpPoint<F> p{f.from_int(xs[0]), f.from_int(xs[1]), f.from_int(xs[2]), f.from_int(xs[3])};
      const auto [b1, b2, d] = blowup_point_backward(f, p);
      return {{"B1", f.to_string(b1)}, {"B2", f.to_string(b2)}, {"d", f.to_string(d)}};
    }
  }
  raise(ErrorCode::MalformedInput, "unknown command '" + cmd + "'");
}

inline json run_fieldless(const JobSpec& job) {
  const std::string& cmd = job.command;
  if (cmd == "walls") {
    json c = json::array();
    for (auto m : candidate_walls(chern_param(job))) c.push_back(m);
    return {{"candidates", c}};
  }
  if (cmd == "chamber") {
    const auto walls = candidate_walls(chern_param(job));
    const std::size_t m = uint_param(job, "m", 0);
    const auto zeta = chamber_rep(m, walls);
    json signs = json::array();
    for (int s : wall_signs(zeta, walls)) signs.push_back(s);
    json w = json::array();
    for (auto x : walls) w.push_back(x);
    return {{"zeta", zeta_to_json(zeta)}, {"walls", w}, {"signs", signs}};
  }
  if (cmd == "classify-w0") {
    const Dims dims = dims_param(job);
    const auto zeta = StabilityParam::parse(need(job, "zeta"));
    const auto c = classify_W0(dims.n0, dims.n1, zeta);
    json out = {{"result", to_string(c.kind)}};
    if (c.kind == W0Kind::UniqueCm || c.kind == W0Kind::UniqueAm) out["m"] = c.m;
    if (c.surface) {
      out["surface"] = to_string(*c.surface);
      out["degree"] = c.degree;
    }
    if (!c.note.empty()) out["note"] = c.note;
    return out;
  }
  return nullptr;
}

template <class Fn>
json with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_finite()) return fn(GaloisField(spec));
  return fn(Rationals{});
}

inline int exit_code(ErrorCode c) { return c == ErrorCode::BoundExceeded ? 2 : 1; }

}  // namespace cli_detail

/// Runs a job, writing the JSON report to `out` (or the job's output path).
/// Exit codes: 0 when a result was computed, 1 on input errors, 2 when a
/// resource bound was hit.
inline int run(const JobSpec& job, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  json report;
  int code = 0;
  try {
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
      raise(ErrorCode::MalformedInput, "unknown command '" + job.command + "'");
    report = run_fieldless(job);
    if (report.is_null()) {
      static const std::vector<std::string> flag_commands = {"enumerate", "sweep", "blowup-point"};
      const bool flags_only =
          std::find(flag_commands.begin(), flag_commands.end(), job.command) != flag_commands.end();
      if (flags_only) {
        const FieldSpec spec = parse_field_name(param(job, "field").value_or("GF2"));
        report = with_field(spec, [&](const auto& f) { return run_on_flags(f, job); });
      } else {
        const json in = read_input(job);
        FieldSpec spec = FieldSpec::rationals();
        if (auto name = param(job, "field")) spec = parse_field_name(*name);
        else if (in.contains("field")) spec = field_from_json(in.at("field"));
        report = with_field(spec, [&](const auto& f) { return run_on_input(f, job, in); });
      }
    }
  } catch (const Error& e) {
    code = exit_code(e.code());
    report = {{"error", to_string(e.code())}, {"message", e.what()}};
    err << "adhm: " << e.what() << "\n";
  } catch (const json::exception& e) {
    code = 1;
    report = {{"error", "MalformedInput"}, {"message", e.what()}};
    err << "adhm: " << e.what() << "\n";
  }
  const std::string text = report.dump(2) + "\n";
  if (job.outputPath) {
    std::ofstream file(*job.outputPath);
    if (!file) {
      err << "adhm: cannot write " << *job.outputPath << "\n";
      return 1;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace adhm
