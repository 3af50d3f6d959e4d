#ifndef LEAKSIM_TRACE_HPP
#define LEAKSIM_TRACE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "leaksim/errors.hpp"
#include "leaksim/taint.hpp"

namespace leaksim {

// One record per observable event in a run. The serialized trace is the
// determinism surface: identical inputs must produce identical bytes.

struct UserEventPayload {
  std::string eventKind;  // "launch" | "click"
  std::string detail;     // activity or button name
};

struct CallbackPayload {
  std::string handler;
  bool absent = false;
};

struct SourceReadPayload {
  std::string field;  // source field key, or "clock"
  std::string var;
};

struct CriteriaPayload {
  int accuracy;
};

struct LogPayload {
  std::string priority;
  std::string tag;
  TaintedValue message;
};

struct ToastPayload {
  TaintedValue message;
};

struct StorePayload {
  std::string key;
  TaintedValue value;
};

struct NetSendPayload {
  std::string endpoint;
  TaintedValue payload;
};

struct FaultPayload {
  FaultKind error;
  std::string detail;
};

using TracePayload =
    std::variant<UserEventPayload, CallbackPayload, SourceReadPayload,
                 CriteriaPayload, LogPayload, ToastPayload, StorePayload,
                 NetSendPayload, FaultPayload>;

struct TraceEntry {
  std::uint64_t seq = 0;
  std::int64_t atMillis = 0;
  std::string component;
  TracePayload payload;
};

using Trace = std::vector<TraceEntry>;

inline std::string_view trace_kind(const TracePayload& payload) {
  return std::visit(
      [](const auto& p) -> std::string_view {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UserEventPayload>) return "UserEvent";
        else if constexpr (std::is_same_v<T, CallbackPayload>) return "Callback";
        else if constexpr (std::is_same_v<T, SourceReadPayload>) return "SourceRead";
        else if constexpr (std::is_same_v<T, CriteriaPayload>) return "CriteriaSet";
        else if constexpr (std::is_same_v<T, LogPayload>) return "Log";
        else if constexpr (std::is_same_v<T, ToastPayload>) return "Toast";
        else if constexpr (std::is_same_v<T, StorePayload>) return "Store";
        else if constexpr (std::is_same_v<T, NetSendPayload>) return "NetSend";
        else return "Fault";
      },
      payload);
}

namespace detail {

inline nlohmann::ordered_json taint_labels(const TaintSet& taints) {
  auto arr = nlohmann::ordered_json::array();
  for (SourceField f : taints) arr.push_back(std::string(to_string(f)));
  return arr;
}

inline nlohmann::ordered_json render_payload(const TracePayload& payload) {
  nlohmann::ordered_json out;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UserEventPayload>) {
          out["event"] = p.eventKind;
          out["target"] = p.detail;
        } else if constexpr (std::is_same_v<T, CallbackPayload>) {
          out["handler"] = p.handler;
          if (p.absent) out["absent"] = true;
        } else if constexpr (std::is_same_v<T, SourceReadPayload>) {
          out["field"] = p.field;
          out["var"] = p.var;
        } else if constexpr (std::is_same_v<T, CriteriaPayload>) {
          out["accuracy"] = p.accuracy;
        } else if constexpr (std::is_same_v<T, LogPayload>) {
          out["priority"] = p.priority;
          out["tag"] = p.tag;
          out["message"] = p.message.value;
          out["taints"] = taint_labels(p.message.taints);
        } else if constexpr (std::is_same_v<T, ToastPayload>) {
          out["message"] = p.message.value;
          out["taints"] = taint_labels(p.message.taints);
        } else if constexpr (std::is_same_v<T, StorePayload>) {
          out["key"] = p.key;
          out["value"] = p.value.value;
          out["taints"] = taint_labels(p.value.taints);
        } else if constexpr (std::is_same_v<T, NetSendPayload>) {
          out["endpoint"] = p.endpoint;
          out["payload"] = p.payload.value;
          out["taints"] = taint_labels(p.payload.taints);
        } else {
          out["error"] = std::string(to_string(p.error));
          out["detail"] = p.detail;
        }
      },
      payload);
  return out;
}

}  // namespace detail

// Newline-delimited records, one entry per line, field order fixed.
inline std::string render_trace(const Trace& trace) {
  std::string out;
  for (const auto& entry : trace) {
    nlohmann::ordered_json line;
    line["seq"] = entry.seq;
    line["atMillis"] = entry.atMillis;
    line["kind"] = std::string(trace_kind(entry.payload));
    line["component"] = entry.component;
    line["payload"] = detail::render_payload(entry.payload);
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace leaksim

#endif  // LEAKSIM_TRACE_HPP
