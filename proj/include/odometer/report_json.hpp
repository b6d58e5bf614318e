#pragma once

// JSON renderings of reports.  Objects use sorted keys, so identical
// inputs give byte-identical output.

#include <json.hpp>

#include "odometer/atomic_rep.hpp"
#include "odometer/classifier.hpp"
#include "odometer/oracle.hpp"

namespace odometer {

nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const NumericReport& r);
nlohmann::json to_json(const AgreementReport& r);
nlohmann::json to_json(const BiShiftReport& r);

}  // namespace odometer
