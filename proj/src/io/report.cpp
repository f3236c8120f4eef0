#include "lewis/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "lewis/errors.hpp"

namespace lewis::io {

namespace {

using Json = nlohmann::ordered_json;

void write_json(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(it.key()).dump() << ": ";
        write_json(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write_json(out, v, indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out << buf;
      return;
    }
    default:
      out << j.dump();
  }
}

Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = std::string(to_string(c.kind));
  j["min_ratio"] = c.min_ratio;
  j["max_ratio"] = c.max_ratio;
  if (c.l1_norm) j["l1_norm"] = *c.l1_norm;
  if (c.l1_limit) j["l1_limit"] = *c.l1_limit;
  j["eps_target"] = c.eps_target;
  j["slack"] = c.slack;
  j["degenerate"] = c.degenerate;
  j["pass"] = c.pass();
  return j;
}

Certificate certificate_from(const Json& j) {
  Certificate c;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "one_sided") {
    c.kind = CertificateKind::one_sided;
  } else if (kind == "two_sided") {
    c.kind = CertificateKind::two_sided;
  } else if (kind == "estimate") {
    c.kind = CertificateKind::estimate;
  } else {
    throw InputError("unknown certificate kind '" + kind + "'");
  }
  c.min_ratio = j.at("min_ratio").get<double>();
  c.max_ratio = j.at("max_ratio").get<double>();
  if (j.contains("l1_norm")) c.l1_norm = j.at("l1_norm").get<double>();
  if (j.contains("l1_limit")) c.l1_limit = j.at("l1_limit").get<double>();
  c.eps_target = j.at("eps_target").get<double>();
  c.slack = j.at("slack").get<double>();
  c.degenerate = j.at("degenerate").get<bool>();
  if (j.at("pass").get<bool>() != c.pass()) {
    throw InputError("certificate '" + kind + "' has a pass flag inconsistent with its ratios");
  }
  return c;
}

}  // namespace

std::string serialize(const RunReport& r) {
  Json j;
  j["version"] = r.version;
  j["input_path"] = r.input_path;
  j["n"] = r.n;
  j["d"] = r.d;
  j["p"] = r.p;
  j["alpha"] = r.alpha;
  j["mode"] = r.mode;

  Json b;
  b["kind"] = r.backend.kind;
  if (r.backend.seed) b["seed"] = *r.backend.seed;
  if (r.backend.eps) b["eps"] = *r.backend.eps;
  if (r.backend.delta) b["delta"] = *r.backend.delta;
  if (r.backend.rows_per_inv_eps2) b["rows_per_inv_eps2"] = *r.backend.rows_per_inv_eps2;
  j["backend"] = b;

  Json s;
  s["eps1"] = r.schedule.eps1;
  s["eps2"] = r.schedule.eps2;
  s["T"] = r.schedule.T;
  s["iterations_executed"] = r.schedule.iterations_executed;
  s["estimate_calls"] = r.schedule.estimate_calls;
  s["leverage_calls"] = r.schedule.leverage_calls;
  s["adaptive_checks"] = r.schedule.adaptive_checks;
  j["schedule"] = s;

  j["weights"] = r.weights;

  Json certs;
  certs["one_sided"] = to_json(r.one_sided);
  certs["two_sided"] = to_json(r.two_sided);
  if (r.estimate) certs["estimate"] = to_json(*r.estimate);
  j["certificates"] = certs;

  if (r.reference) {
    Json ref;
    ref["method"] = r.reference->method;
    ref["tol"] = r.reference->tol;
    ref["residual"] = r.reference->residual;
    ref["iterations"] = r.reference->iterations;
    j["reference"] = ref;
  }

  Json t = Json::object();
  for (const auto& [name, ms] : r.timings_ms) t[name] = ms;
  j["timings_ms"] = t;

  std::ostringstream out;
  write_json(out, j, 0);
  out << "\n";
  return out.str();
}

RunReport parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    RunReport r;
    r.version = j.at("version").get<std::string>();
    r.input_path = j.at("input_path").get<std::string>();
    r.n = j.at("n").get<std::int64_t>();
    r.d = j.at("d").get<std::int64_t>();
    r.p = j.at("p").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.mode = j.at("mode").get<std::string>();

    const Json& b = j.at("backend");
    r.backend.kind = b.at("kind").get<std::string>();
    if (b.contains("seed")) r.backend.seed = b.at("seed").get<std::uint64_t>();
    if (b.contains("eps")) r.backend.eps = b.at("eps").get<double>();
    if (b.contains("delta")) r.backend.delta = b.at("delta").get<double>();
    if (b.contains("rows_per_inv_eps2")) {
      r.backend.rows_per_inv_eps2 = b.at("rows_per_inv_eps2").get<double>();
    }

    const Json& s = j.at("schedule");
    r.schedule.eps1 = s.at("eps1").get<double>();
    r.schedule.eps2 = s.at("eps2").get<double>();
    r.schedule.T = s.at("T").get<std::uint64_t>();
    r.schedule.iterations_executed = s.at("iterations_executed").get<std::uint64_t>();
    r.schedule.estimate_calls = s.at("estimate_calls").get<std::uint64_t>();
    r.schedule.leverage_calls = s.at("leverage_calls").get<std::uint64_t>();
    r.schedule.adaptive_checks = s.at("adaptive_checks").get<std::uint64_t>();

    r.weights = j.at("weights").get<std::vector<double>>();

    const Json& certs = j.at("certificates");
    r.one_sided = certificate_from(certs.at("one_sided"));
    r.two_sided = certificate_from(certs.at("two_sided"));
    if (certs.contains("estimate")) r.estimate = certificate_from(certs.at("estimate"));

    if (j.contains("reference")) {
      const Json& ref = j.at("reference");
      r.reference = ReferenceInfo{ref.at("method").get<std::string>(), ref.at("tol").get<double>(),
                                  ref.at("residual").get<double>(),
                                  ref.at("iterations").get<std::uint64_t>()};
    }
    for (auto it = j.at("timings_ms").begin(); it != j.at("timings_ms").end(); ++it) {
      r.timings_ms.emplace_back(it.key(), it.value().get<double>());
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace lewis::io
