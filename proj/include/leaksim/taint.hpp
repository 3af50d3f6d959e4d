#ifndef LEAKSIM_TAINT_HPP
#define LEAKSIM_TAINT_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace leaksim {

// The seven telephony identity fields a simulated app can read.
enum class SourceField {
  IMEI,
  MSISDN,
  NETWORK_OPERATOR,
  NETWORK_TYPE,
  COUNTRY_ISO,
  SOFTWARE_VERSION,
  PHONE_TYPE,
};

inline constexpr std::array<SourceField, 7> kAllSourceFields{
    SourceField::IMEI,           SourceField::MSISDN,
    SourceField::NETWORK_OPERATOR, SourceField::NETWORK_TYPE,
    SourceField::COUNTRY_ISO,    SourceField::SOFTWARE_VERSION,
    SourceField::PHONE_TYPE,
};

inline std::string_view to_string(SourceField f) {
  switch (f) {
    case SourceField::IMEI: return "IMEI";
    case SourceField::MSISDN: return "MSISDN";
    case SourceField::NETWORK_OPERATOR: return "NETWORK_OPERATOR";
    case SourceField::NETWORK_TYPE: return "NETWORK_TYPE";
    case SourceField::COUNTRY_ISO: return "COUNTRY_ISO";
    case SourceField::SOFTWARE_VERSION: return "SOFTWARE_VERSION";
    case SourceField::PHONE_TYPE: return "PHONE_TYPE";
  }
  return "?";
}

// Descriptor-level field identifiers match the device profile keys.
inline std::string_view field_key(SourceField f) {
  switch (f) {
    case SourceField::IMEI: return "imei";
    case SourceField::MSISDN: return "msisdn";
    case SourceField::NETWORK_OPERATOR: return "networkOperatorName";
    case SourceField::NETWORK_TYPE: return "networkType";
    case SourceField::COUNTRY_ISO: return "networkCountryIso";
    case SourceField::SOFTWARE_VERSION: return "deviceSoftwareVersion";
    case SourceField::PHONE_TYPE: return "phoneType";
  }
  return "?";
}

inline std::optional<SourceField> field_from_key(std::string_view key) {
  for (SourceField f : kAllSourceFields) {
    if (field_key(f) == key) return f;
  }
  return std::nullopt;
}

using TaintSet = std::set<SourceField>;

// A string value carrying the set of source labels it derives from.
struct TaintedValue {
  std::string value;
  TaintSet taints;

  bool operator==(const TaintedValue&) const = default;
};

inline std::string join_labels(const TaintSet& taints) {
  std::string out;
  for (SourceField f : taints) {
    if (!out.empty()) out += ',';
    out += to_string(f);
  }
  return out;
}

}  // namespace leaksim

#endif  // LEAKSIM_TAINT_HPP
