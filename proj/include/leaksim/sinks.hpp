#ifndef LEAKSIM_SINKS_HPP
#define LEAKSIM_SINKS_HPP

#include <optional>
#include <string>
#include <variant>

#include "leaksim/device.hpp"
#include "leaksim/errors.hpp"
#include "leaksim/taint.hpp"
#include "leaksim/trace.hpp"

namespace leaksim {

// The four output channels. Each appends a taint-carrying trace entry to
// the run; none performs real I/O. The caller owns seq/time assignment
// via the appender, so sinks stay decoupled from the engine state.

class TraceWriter {
 public:
  TraceWriter(Trace& trace, std::uint64_t& nextSeq)
      : trace_(trace), nextSeq_(nextSeq) {}

  TraceEntry& append(std::int64_t atMillis, std::string component,
                     TracePayload payload) {
    trace_.push_back(
        {nextSeq_++, atMillis, std::move(component), std::move(payload)});
    return trace_.back();
  }

 private:
  Trace& trace_;
  std::uint64_t& nextSeq_;
};

inline void log_write(TraceWriter& writer, std::int64_t atMillis,
                      const std::string& ctx, LogPriority priority,
                      std::string tag, TaintedValue message) {
  writer.append(atMillis, ctx,
                LogPayload{std::string(to_string(priority)), std::move(tag),
                           std::move(message)});
}

inline void toast_show(TraceWriter& writer, std::int64_t atMillis,
                       const std::string& ctx, TaintedValue message) {
  writer.append(atMillis, ctx, ToastPayload{std::move(message)});
}

inline void store_write(TraceWriter& writer, std::int64_t atMillis,
                        const std::string& ctx, std::string key,
                        TaintedValue value) {
  writer.append(atMillis, ctx, StorePayload{std::move(key), std::move(value)});
}

// Gated on INTERNET; a denied send is a fault for the handler's catch
// path and produces no NetSend entry.
inline std::optional<HandlerFault> net_send(TraceWriter& writer,
                                            std::int64_t atMillis,
                                            const std::string& ctx,
                                            std::string endpoint,
                                            TaintedValue payload,
                                            const PermissionSet& granted) {
  if (granted.find(kInternet) == granted.end()) {
    return HandlerFault{FaultKind::MissingPermission, std::string(kInternet)};
  }
  writer.append(atMillis, ctx,
                NetSendPayload{std::move(endpoint), std::move(payload)});
  return std::nullopt;
}

// Logcat text: one `P/tag: message` line per Log entry, seq order,
// trailing newline. Everything else is omitted.
inline std::string render_logcat(const Trace& trace) {
  std::string out;
  for (const auto& entry : trace) {
    if (const auto* log = std::get_if<LogPayload>(&entry.payload)) {
      out += log->priority;
      out += '/';
      out += log->tag;
      out += ": ";
      out += log->message.value;
      out += '\n';
    }
  }
  return out;
}

// Store dump: `key<TAB>value<TAB>comma-joined-taint-labels` per Store entry.
inline std::string render_store_dump(const Trace& trace) {
  std::string out;
  for (const auto& entry : trace) {
    if (const auto* store = std::get_if<StorePayload>(&entry.payload)) {
      out += store->key;
      out += '\t';
      out += store->value.value;
      out += '\t';
      out += join_labels(store->value.taints);
      out += '\n';
    }
  }
  return out;
}

}  // namespace leaksim

#endif  // LEAKSIM_SINKS_HPP
