#ifndef LEAKSIM_REPORT_HPP
#define LEAKSIM_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leaksim/descriptor.hpp"
#include "leaksim/taint.hpp"
#include "leaksim/trace.hpp"

namespace leaksim {

enum class SinkKind { Log, Store, Network };

inline std::string_view to_string(SinkKind k) {
  switch (k) {
    case SinkKind::Log: return "log";
    case SinkKind::Store: return "store";
    case SinkKind::Network: return "network";
  }
  return "?";
}

enum class Verdict { Clean, LeaksFound };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::Clean ? "CLEAN" : "LEAKS_FOUND";
}

struct TriggerRef {
  std::uint64_t seq;
  std::string eventKind;
  std::string detail;
  std::int64_t atMillis;
};

// One tainted sink write. Untainted writes are not flows.
struct FlowRecord {
  std::uint64_t seq;
  TaintSet sourceLabels;
  SinkKind sinkKind;
  std::string component;
  ComponentKind componentKind;
  std::optional<TriggerRef> triggeringEvent;
  bool disclosed = false;
  std::int64_t atMillis;
};

struct SummaryRow {
  ComponentKind componentKind;
  SinkKind sinkKind;
  bool disclosed;
  std::size_t count;
};

struct FlowReport {
  std::vector<FlowRecord> flows;
  std::vector<SummaryRow> summary;
  Verdict verdict = Verdict::Clean;
};

namespace detail {

inline ComponentKind component_kind_of(const AppDescriptor& app,
                                       const std::string& name) {
  const ComponentDecl* decl = app.find_component(name);
  return decl ? decl->kind : ComponentKind::Service;
}

}  // namespace detail

// One FlowRecord per Log/Store/NetSend entry with non-empty taints, in
// seq order. The triggering event is the most recent UserEvent entry
// before the write; the engine is run-to-completion, so attribution is
// exact.
inline std::vector<FlowRecord> extract_flows(const Trace& trace,
                                             const AppDescriptor& app) {
  std::vector<FlowRecord> flows;
  std::optional<TriggerRef> lastEvent;
  for (const auto& entry : trace) {
    if (const auto* ue = std::get_if<UserEventPayload>(&entry.payload)) {
      lastEvent = TriggerRef{entry.seq, ue->eventKind, ue->detail,
                             entry.atMillis};
      continue;
    }
    const TaintSet* taints = nullptr;
    SinkKind sink{};
    if (const auto* log = std::get_if<LogPayload>(&entry.payload)) {
      taints = &log->message.taints;
      sink = SinkKind::Log;
    } else if (const auto* store = std::get_if<StorePayload>(&entry.payload)) {
      taints = &store->value.taints;
      sink = SinkKind::Store;
    } else if (const auto* net = std::get_if<NetSendPayload>(&entry.payload)) {
      taints = &net->payload.taints;
      sink = SinkKind::Network;
    }
    if (!taints || taints->empty()) continue;
    flows.push_back({entry.seq, *taints, sink, entry.component,
                     detail::component_kind_of(app, entry.component),
                     lastEvent, false, entry.atMillis});
  }
  return flows;
}

// disclosed=true iff some earlier Toast carried a superset of the flow's
// labels — the user was shown the data itself, not just a generic
// message. A triggering click alone does not count as disclosure.
inline void classify_flow(FlowRecord& flow, const Trace& trace) {
  flow.disclosed = false;
  for (const auto& entry : trace) {
    if (entry.seq >= flow.seq) break;
    const auto* toast = std::get_if<ToastPayload>(&entry.payload);
    if (!toast) continue;
    if (std::includes(toast->message.taints.begin(),
                      toast->message.taints.end(), flow.sourceLabels.begin(),
                      flow.sourceLabels.end())) {
      flow.disclosed = true;
      return;
    }
  }
}

inline FlowReport build_report(const Trace& trace, const AppDescriptor& app) {
  FlowReport report;
  report.flows = extract_flows(trace, app);
  for (auto& flow : report.flows) {
    classify_flow(flow, trace);
  }

  std::map<std::tuple<ComponentKind, SinkKind, bool>, std::size_t> counts;
  for (const auto& flow : report.flows) {
    ++counts[{flow.componentKind, flow.sinkKind, flow.disclosed}];
  }
  for (const auto& [key, count] : counts) {
    report.summary.push_back(
        {std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }

  report.verdict = Verdict::Clean;
  for (const auto& flow : report.flows) {
    if (!flow.disclosed) {
      report.verdict = Verdict::LeaksFound;
      break;
    }
  }
  return report;
}

namespace detail {

inline std::string render_trigger(const std::optional<TriggerRef>& trigger) {
  if (!trigger) return "none";
  return trigger->eventKind + "(" + trigger->detail + ")@" +
         std::to_string(trigger->atMillis);
}

}  // namespace detail

inline std::string render_report_text(const FlowReport& report) {
  std::string out;
  out += "flow report (disclosure rule: a flow counts as disclosed only if "
         "an earlier toast showed a superset of its source labels)\n";
  out += "verdict: ";
  out += to_string(report.verdict);
  out += '\n';
  for (const auto& row : report.summary) {
    out += std::string(to_string(row.componentKind));
    if (row.componentKind == ComponentKind::Service) out += " (background)";
    out += '/';
    out += to_string(row.sinkKind);
    out += ": " + std::to_string(row.count) + ' ';
    out += row.disclosed ? "disclosed" : "undisclosed";
    out += '\n';
  }
  for (const auto& flow : report.flows) {
    out += '[' + std::to_string(flow.seq) + "] {" +
           join_labels(flow.sourceLabels) + "} -> " +
           std::string(to_string(flow.sinkKind)) + " in " + flow.component +
           '(' + std::string(to_string(flow.componentKind)) + ") trigger=" +
           detail::render_trigger(flow.triggeringEvent) + " disclosed=" +
           (flow.disclosed ? "true" : "false") + '\n';
  }
  return out;
}

inline std::string render_report_structured(const FlowReport& report) {
  nlohmann::ordered_json doc;
  doc["verdict"] = std::string(to_string(report.verdict));
  doc["summary"] = nlohmann::ordered_json::array();
  for (const auto& row : report.summary) {
    nlohmann::ordered_json r;
    r["componentKind"] = std::string(to_string(row.componentKind));
    r["sinkKind"] = std::string(to_string(row.sinkKind));
    r["disclosed"] = row.disclosed;
    r["count"] = row.count;
    doc["summary"].push_back(std::move(r));
  }
  doc["flows"] = nlohmann::ordered_json::array();
  for (const auto& flow : report.flows) {
    nlohmann::ordered_json f;
    f["seq"] = flow.seq;
    f["sourceLabels"] = detail::taint_labels(flow.sourceLabels);
    f["sinkKind"] = std::string(to_string(flow.sinkKind));
    f["component"] = flow.component;
    f["componentKind"] = std::string(to_string(flow.componentKind));
    f["trigger"] = detail::render_trigger(flow.triggeringEvent);
    f["disclosed"] = flow.disclosed;
    f["atMillis"] = flow.atMillis;
    doc["flows"].push_back(std::move(f));
  }
  return doc.dump(2) + "\n";
}

enum class ReportFormat { Text, Structured };

inline std::string render_report(const FlowReport& report,
                                 ReportFormat format) {
  return format == ReportFormat::Text ? render_report_text(report)
                                      : render_report_structured(report);
}

}  // namespace leaksim

#endif  // LEAKSIM_REPORT_HPP
