#ifndef LEAKSIM_DEVICE_HPP
#define LEAKSIM_DEVICE_HPP

#include <cstdint>
#include <ctime>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "leaksim/errors.hpp"
#include "leaksim/taint.hpp"

namespace leaksim {

inline constexpr std::string_view kReadPhoneState =
    "android.permission.READ_PHONE_STATE";
inline constexpr std::string_view kInternet = "android.permission.INTERNET";

// Mock telephony identity plus a fixed simulated clock. Immutable after
// parsing; the run is virtual-time, driven by event timestamps.
struct DeviceProfile {
  std::string imei = "000000000000000";
  std::string msisdn = "15555215554";
  std::string networkOperatorName = "Android";
  int networkType = 3;
  std::string networkCountryIso = "us";
  std::string deviceSoftwareVersion = "00";
  int phoneType = 1;
  std::int64_t clockEpochMillis = 1305158400000;

  bool operator==(const DeviceProfile&) const = default;
};

struct Criteria {
  int accuracy;
};

using PermissionSet = std::set<std::string, std::less<>>;

// The permission each source field is gated behind; fields with no entry
// are readable without any grant.
inline std::optional<std::string_view> required_permission(SourceField f) {
  switch (f) {
    case SourceField::IMEI:
    case SourceField::MSISDN:
    case SourceField::SOFTWARE_VERSION:
      return kReadPhoneState;
    default:
      return std::nullopt;
  }
}

inline std::string render_field(const DeviceProfile& profile, SourceField f) {
  switch (f) {
    case SourceField::IMEI: return profile.imei;
    case SourceField::MSISDN: return profile.msisdn;
    case SourceField::NETWORK_OPERATOR: return profile.networkOperatorName;
    case SourceField::NETWORK_TYPE: return std::to_string(profile.networkType);
    case SourceField::COUNTRY_ISO: return profile.networkCountryIso;
    case SourceField::SOFTWARE_VERSION: return profile.deviceSoftwareVersion;
    case SourceField::PHONE_TYPE: return std::to_string(profile.phoneType);
  }
  return {};
}

// Reads one identity field, labelling the result with exactly that field.
// A missing required permission yields a HandlerFault value for the
// runtime's catch path; it never aborts.
inline std::variant<TaintedValue, HandlerFault> read_source(
    const DeviceProfile& profile, SourceField field,
    const PermissionSet& granted) {
  if (auto perm = required_permission(field);
      perm && granted.find(*perm) == granted.end()) {
    return HandlerFault{FaultKind::PermissionFault, std::string(*perm)};
  }
  return TaintedValue{render_field(profile, field), {field}};
}

// Fixed "EEE MMM dd HH:mm:ss zzz yyyy" rendering in UTC.
inline std::string render_clock_date(std::int64_t epochMillis) {
  static constexpr const char* kDays[] = {"Sun", "Mon", "Tue", "Wed",
                                          "Thu", "Fri", "Sat"};
  static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr",
                                            "May", "Jun", "Jul", "Aug",
                                            "Sep", "Oct", "Nov", "Dec"};
  std::time_t secs = static_cast<std::time_t>(epochMillis / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s %s %02d %02d:%02d:%02d UTC %d",
                kDays[tm.tm_wday], kMonths[tm.tm_mon], tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, tm.tm_year + 1900);
  return buf;
}

struct ClockReading {
  TaintedValue timeMillis;
  TaintedValue dateString;
};

// Both renderings carry empty taint sets: timestamps identify nobody.
inline ClockReading read_clock(const DeviceProfile& profile) {
  return {TaintedValue{std::to_string(profile.clockEpochMillis), {}},
          TaintedValue{render_clock_date(profile.clockEpochMillis), {}}};
}

inline std::variant<Criteria, HandlerFault> set_criteria_accuracy(int value) {
  if (value != 1 && value != 2) {
    return HandlerFault{FaultKind::InvalidAccuracy, std::to_string(value)};
  }
  return Criteria{value};
}

}  // namespace leaksim

#endif  // LEAKSIM_DEVICE_HPP
