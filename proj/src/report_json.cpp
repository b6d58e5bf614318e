#include "odometer/report_json.hpp"

#include <cmath>

namespace odometer {

using nlohmann::json;

namespace {

json violation(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return {{"vertex", v->vertex}, {"relation", v->relation}, {"expected", v->expected}, {"found", v->found}};
}

}  // namespace

json to_json(const Certificate& cert) {
  json j = {{"kind", cert.kind_name()}, {"chain", cert.chain}};
  if (cert.kind == Certificate::Kind::StripPath) {
    j["mu"] = cert.mu;
    j["m"] = cert.m;
    j["core"] = cert.core;
    return j;
  }
  j["orbit"] = to_string(cert.orbit);
  if (cert.avoid != Avoid::None) j["avoid"] = to_string(cert.avoid);
  if (cert.kind == Certificate::Kind::OrbitCycle) j["period"] = cert.period;
  if (cert.kind == Certificate::Kind::HintRegion) j["hint"] = cert.hint;
  return j;
}

json to_json(const Classification& c) {
  json j = {{"vertex", c.vertex}, {"budget", c.budget}};
  json certs = json::array();
  for (const auto& [id, verdict] : c.verdicts) {
    j[to_string(id)] = to_string(verdict.status);
    // The weak bi-shift verdict only repeats the other certificates.
    if (id == ComponentId::WS) continue;
    for (const auto& cert : verdict.certificates) {
      json x = to_json(cert);
      x["component"] = to_string(id);
      certs.push_back(std::move(x));
    }
  }
  j["resolved"] = c.resolved ? json(to_string(*c.resolved)) : json(nullptr);
  j["certificates"] = std::move(certs);
  return j;
}

json to_json(const CheckReport& r) {
  return {{"pass", r.pass}, {"explored", r.explored}, {"violation", violation(r.violation)}};
}

json to_json(const NumericReport& r) {
  json j = {{"residuals", r.residuals},
            {"nica_residual", r.nica_residual},
            {"interior", r.interior},
            {"pass", r.pass}};
  j["nica_witness"] = r.nica_witness ? json(*r.nica_witness) : json(nullptr);
  return j;
}

json to_json(const AgreementReport& r) {
  json d = json::array();
  for (const auto& x : r.disagreements) {
    d.push_back({{"vertex", x.vertex},
                 {"component", to_string(x.component)},
                 {"verdict", to_string(x.status)},
                 {"projection", x.value}});
  }
  return {{"vertices", r.vertices}, {"compared", r.compared}, {"unknown", r.unknown}, {"truncated", r.truncated},
          {"disagreements", d}};
}

json to_json(const BiShiftReport& r) {
  const char* status = r.status == Status::In ? "pass" : r.status == Status::Out ? "fail" : "unknown";
  json j = {{"status", status}, {"checked", r.checked}, {"reason", r.reason}};
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return j;
}

}  // namespace odometer
