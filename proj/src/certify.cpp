#include "kisslat/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kisslat/binary_code.hpp"
#include "kisslat/bounds.hpp"
#include "kisslat/canonical_json.hpp"
#include "kisslat/lattice.hpp"

namespace kisslat::certify {

using nlohmann::json;

StageError::StageError(std::string stage, const std::string& message, std::shared_ptr<const Certificate> partial)
    : Error("stage " + stage + ": " + message), stage_(std::move(stage)), partial_(std::move(partial)) {}

double canonical_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fnv1a64_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::int64_t> to_vec(std::span<const std::int64_t> s) { return {s.begin(), s.end()}; }

}  // namespace

Certificate certify(std::string_view code_text, const CertifyOptions& options) {
  auto cert = std::make_shared<Certificate>();
  cert->meta.tool_version = std::string(kToolVersion);
  cert->meta.seed = options.seed;
  cert->meta.max_dimension = options.max_dimension;
  cert->meta.max_k = options.max_k;
  cert->meta.closure_trials = options.trials;
  std::map<std::string, double> timings;

  std::string stage;
  auto start = Clock::now();
  auto lap = [&](const std::string& name) {
    const auto now = Clock::now();
    timings[name] = std::chrono::duration<double, std::milli>(now - start).count();
    start = now;
  };

  try {
    stage = "parse_code";
    const BinaryCode code = parse_code(code_text);
    cert->code.n = code.n();
    cert->code.k = code.k();
    lap(stage);

    stage = "self_orthogonality";
    cert->code.self_orthogonal = is_self_orthogonal(code);
    if (!cert->code.self_orthogonal) {
      cert->warnings.push_back("code is not self-orthogonal; the lattice is still built but the norm and kissing "
                               "guarantees do not apply");
    }
    lap(stage);

    stage = "weights";
    const auto wd = weight_distribution(code, options.workers);
    cert->code.d = wd.d;
    cert->code.A_d = wd.A_d;
    cert->code.weights = wd.counts;
    lap(stage);

    stage = "lattice";
    if (code.k() > options.max_k) {
      throw GuardError("code dimension " + std::to_string(code.k()) + " exceeds the cap " + std::to_string(options.max_k));
    }
    const auto basis = lattice::build_span_basis(code);
    cert->lattice.dimension = basis.n();
    cert->lattice.determinant = basis.determinant();
    cert->lattice.determinant_log2 = basis.determinant_log2();
    for (int i = 0; i < basis.n(); ++i) cert->lattice.basis.push_back(to_vec(basis.row(i)));
    cert->lattice.basis_digest = fnv1a64_hex(lattice::format_lattice(basis));
    bool residue_ok = true;
    for (int i = 0; i < basis.n(); ++i) residue_ok = residue_ok && code.contains(lattice::residue(basis.row(i)));
    cert->checks.residue_invariant = residue_ok;
    lap(stage);

    stage = "enumeration";
    const int cap = options.cap.value_or(std::max(wd.d.value_or(0), 8));
    cert->meta.norm_cap = cap;
    if (code.n() > options.max_dimension && !options.force) {
      throw GuardError("code length " + std::to_string(code.n()) + " exceeds the enumeration cap " +
                       std::to_string(options.max_dimension));
    }
    lattice::EnumerationOptions eo;
    eo.workers = options.workers;
    eo.force = options.force;
    const auto shortest = lattice::enumerate_short(basis, cap, eo);
    cert->lattice.min_norm = shortest.min_norm;
    cert->lattice.kissing = shortest.kissing;
    cert->lattice.per_norm = shortest.per_norm;
    if (wd.d) {
      const bool norm_ok = shortest.min_norm == *wd.d;
      cert->checks.norm_equals_d = norm_ok;
      cert->checks.kissing_ge_Ad = norm_ok && shortest.kissing >= wd.A_d;
    }
    if (!shortest.min_norm) {
      cert->warnings.push_back("no lattice vector of norm <= " + std::to_string(cap) + " found");
    }
    lap(stage);

    stage = "closure";
    const auto closure = lattice::closure_probe(code, options.trials, options.seed);
    cert->closure.trials = closure.trials;
    cert->closure.passed = closure.passed;
    cert->closure.failed = closure.failed;
    for (const auto& ce : closure.counterexamples) cert->closure.counterexamples.push_back({ce.x, ce.y, ce.sum});
    cert->checks.set_closed_sampled = closure.failed == 0;
    cert->checks.span_contains_set_sampled =
        lattice::span_misses_set(code, basis, options.trials, options.seed + 1) == 0;
    lap(stage);

    stage = "bounds";
    for (const auto& [name, value] : bounds::constants()) cert->bounds_snapshot[name] = canonical_double(value);
    lap(stage);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what(), cert);
  }

  if (options.record_timings) {
    for (auto& [name, ms] : timings) ms = canonical_double(ms);
    cert->meta.timings_ms = timings;
  }
  return *cert;
}

Certificate certify_file(const std::string& path, const CertifyOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError("parse_code", "cannot read " + path, std::make_shared<Certificate>());
  std::ostringstream text;
  text << in.rdbuf();
  return certify(text.str(), options);
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv-summary") return Format::csv_summary;
  throw DomainError("unknown format '" + std::string(name) + "' (expected json or csv-summary)");
}

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json counts_json(const std::map<int, std::uint64_t>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::map<int, std::uint64_t> counts_from(const json& j) {
  std::map<int, std::uint64_t> m;
  for (const auto& [k, v] : j.items()) m[std::stoi(k)] = v.get<std::uint64_t>();
  return m;
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json to_json(const Certificate& c) {
  json j;
  j["code"] = {{"n", c.code.n},
               {"k", c.code.k},
               {"d", optional_json(c.code.d)},
               {"A_d", c.code.A_d},
               {"self_orthogonal", c.code.self_orthogonal},
               {"weights", counts_json(c.code.weights)}};
  j["lattice"] = {{"dimension", c.lattice.dimension},
                  {"determinant", c.lattice.determinant},
                  {"determinant_log2", c.lattice.determinant_log2},
                  {"min_norm", optional_json(c.lattice.min_norm)},
                  {"kissing", c.lattice.kissing},
                  {"per_norm", counts_json(c.lattice.per_norm)},
                  {"basis", c.lattice.basis},
                  {"basis_digest", c.lattice.basis_digest}};
  j["checks"] = {{"set_closed_sampled", c.checks.set_closed_sampled},
                 {"norm_equals_d", optional_json(c.checks.norm_equals_d)},
                 {"kissing_ge_Ad", optional_json(c.checks.kissing_ge_Ad)},
                 {"span_contains_set_sampled", c.checks.span_contains_set_sampled},
                 {"residue_invariant", c.checks.residue_invariant}};
  json ces = json::array();
  for (const auto& ce : c.closure.counterexamples) {
    ces.push_back({{"x", ce.at(0)}, {"y", ce.at(1)}, {"sum", ce.at(2)}});
  }
  j["closure"] = {{"trials", c.closure.trials},
                  {"passed", c.closure.passed},
                  {"failed", c.closure.failed},
                  {"counterexamples", ces}};
  j["bounds_snapshot"] = c.bounds_snapshot;
  j["meta"] = {{"tool_version", c.meta.tool_version},
               {"seed", c.meta.seed},
               {"caps",
                {{"norm_cap", c.meta.norm_cap},
                 {"max_dimension", c.meta.max_dimension},
                 {"max_k", c.meta.max_k},
                 {"closure_trials", c.meta.closure_trials}}}};
  if (c.meta.timings_ms) j["meta"]["timings_ms"] = *c.meta.timings_ms;
  j["warnings"] = c.warnings;
  return j;
}

Certificate from_json(const json& j) {
  Certificate c;
  const auto& code = j.at("code");
  c.code.n = code.at("n").get<int>();
  c.code.k = code.at("k").get<int>();
  c.code.d = optional_from<int>(code.at("d"));
  c.code.A_d = code.at("A_d").get<std::uint64_t>();
  c.code.self_orthogonal = code.at("self_orthogonal").get<bool>();
  c.code.weights = counts_from(code.at("weights"));
  const auto& lat = j.at("lattice");
  c.lattice.dimension = lat.at("dimension").get<int>();
  c.lattice.determinant = lat.at("determinant").get<std::string>();
  c.lattice.determinant_log2 = lat.at("determinant_log2").get<int>();
  c.lattice.min_norm = optional_from<int>(lat.at("min_norm"));
  c.lattice.kissing = lat.at("kissing").get<std::uint64_t>();
  c.lattice.per_norm = counts_from(lat.at("per_norm"));
  c.lattice.basis = lat.at("basis").get<std::vector<std::vector<std::int64_t>>>();
  c.lattice.basis_digest = lat.at("basis_digest").get<std::string>();
  const auto& ch = j.at("checks");
  c.checks.set_closed_sampled = ch.at("set_closed_sampled").get<bool>();
  c.checks.norm_equals_d = optional_from<bool>(ch.at("norm_equals_d"));
  c.checks.kissing_ge_Ad = optional_from<bool>(ch.at("kissing_ge_Ad"));
  c.checks.span_contains_set_sampled = ch.at("span_contains_set_sampled").get<bool>();
  c.checks.residue_invariant = ch.at("residue_invariant").get<bool>();
  const auto& cl = j.at("closure");
  c.closure.trials = cl.at("trials").get<std::uint64_t>();
  c.closure.passed = cl.at("passed").get<std::uint64_t>();
  c.closure.failed = cl.at("failed").get<std::uint64_t>();
  for (const auto& ce : cl.at("counterexamples")) {
    c.closure.counterexamples.push_back({ce.at("x").get<std::vector<std::int64_t>>(),
                                         ce.at("y").get<std::vector<std::int64_t>>(),
                                         ce.at("sum").get<std::vector<std::int64_t>>()});
  }
  c.bounds_snapshot = j.at("bounds_snapshot").get<std::map<std::string, double>>();
  const auto& meta = j.at("meta");
  c.meta.tool_version = meta.at("tool_version").get<std::string>();
  c.meta.seed = meta.at("seed").get<std::uint64_t>();
  const auto& caps = meta.at("caps");
  c.meta.norm_cap = caps.at("norm_cap").get<int>();
  c.meta.max_dimension = caps.at("max_dimension").get<int>();
  c.meta.max_k = caps.at("max_k").get<int>();
  c.meta.closure_trials = caps.at("closure_trials").get<std::uint64_t>();
  if (meta.contains("timings_ms")) c.meta.timings_ms = meta.at("timings_ms").get<std::map<std::string, double>>();
  c.warnings = j.at("warnings").get<std::vector<std::string>>();
  return c;
}

std::string verdict_text(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : "null"; }

}  // namespace

std::string emit(const Certificate& cert, Format format) {
  if (format == Format::csv_summary) {
    std::string out = "n,k,d,A_d,min_norm,kissing,verdicts\n";
    out += std::to_string(cert.code.n) + "," + std::to_string(cert.code.k) + "," +
           (cert.code.d ? std::to_string(*cert.code.d) : "") + "," + std::to_string(cert.code.A_d) + "," +
           (cert.lattice.min_norm ? std::to_string(*cert.lattice.min_norm) : "") + "," +
           std::to_string(cert.lattice.kissing) + ",";
    out += "set_closed_sampled=" + verdict_text(cert.checks.set_closed_sampled) +
           ";norm_equals_d=" + verdict_text(cert.checks.norm_equals_d) +
           ";kissing_ge_Ad=" + verdict_text(cert.checks.kissing_ge_Ad) +
           ";span_contains_set_sampled=" + verdict_text(cert.checks.span_contains_set_sampled) + "\n";
    return out;
  }
  return canonical_dump(to_json(cert));
}

Certificate parse_certificate(std::string_view json_text) {
  try {
    return from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

}  // namespace kisslat::certify
