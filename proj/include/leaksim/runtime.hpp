#ifndef LEAKSIM_RUNTIME_HPP
#define LEAKSIM_RUNTIME_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "leaksim/descriptor.hpp"
#include "leaksim/device.hpp"
#include "leaksim/errors.hpp"
#include "leaksim/sinks.hpp"
#include "leaksim/taint.hpp"
#include "leaksim/trace.hpp"

namespace leaksim {

enum class InstanceState { Declared, Created, Running, Destroyed };

inline std::string_view to_string(InstanceState s) {
  switch (s) {
    case InstanceState::Declared: return "DECLARED";
    case InstanceState::Created: return "CREATED";
    case InstanceState::Running: return "RUNNING";
    case InstanceState::Destroyed: return "DESTROYED";
  }
  return "?";
}

// Per-component-instance state. Variables are scoped to the instance and
// cleared when it is destroyed; destroyed records are kept for trace
// attribution rather than deleted.
struct ComponentInstance {
  const ComponentDecl* decl = nullptr;
  InstanceState state = InstanceState::Declared;
  std::map<std::string, TaintedValue> vars;
  std::int64_t createdAtMillis = 0;
};

struct Intent {
  std::string sourceComponent;
  std::string targetComponent;
};

// Single-threaded engine value. The whole run is deterministic:
// run-to-completion per user event, virtual time from event timestamps.
struct RuntimeState {
  // Instances hold pointers into app.components; moving is fine, copying
  // would dangle, so copies are disabled.
  RuntimeState() = default;
  RuntimeState(const RuntimeState&) = delete;
  RuntimeState& operator=(const RuntimeState&) = delete;
  RuntimeState(RuntimeState&&) = default;
  RuntimeState& operator=(RuntimeState&&) = default;

  AppDescriptor app;
  DeviceProfile device;
  std::map<std::string, ComponentInstance> instances;
  Trace trace;
  std::uint64_t nextSeq = 0;
  std::int64_t virtualNowMillis = 0;
  std::optional<std::string> foregroundActivity;

  TraceWriter writer() { return TraceWriter(trace, nextSeq); }
};

inline RuntimeState boot(AppDescriptor app, DeviceProfile device) {
  RuntimeState rt;
  rt.app = std::move(app);
  rt.device = std::move(device);
  for (const auto& comp : rt.app.components) {
    rt.instances[comp.name] = ComponentInstance{&comp};
  }
  return rt;
}

// Substitutes {var} placeholders from the instance's variable store; the
// result's taints are the union of all substituted variables' taints.
inline std::variant<TaintedValue, HandlerFault> eval_template(
    const std::string& tmpl, const std::map<std::string, TaintedValue>& vars) {
  TaintedValue out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out.value += tmpl[i];
      continue;
    }
    if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out.value += '{';
      ++i;
      continue;
    }
    auto close = tmpl.find('}', i + 1);
    if (close == std::string::npos) {
      // Parse-time validation rejects unclosed placeholders; treat a raw
      // one as an unbound reference rather than looping.
      return HandlerFault{FaultKind::UnboundVariable, tmpl.substr(i + 1)};
    }
    std::string name = tmpl.substr(i + 1, close - i - 1);
    auto it = vars.find(name);
    if (it == vars.end()) {
      return HandlerFault{FaultKind::UnboundVariable, name};
    }
    out.value += it->second.value;
    out.taints.insert(it->second.taints.begin(), it->second.taints.end());
    i = close;
  }
  return out;
}

inline void run_handler(RuntimeState& rt, ComponentInstance& instance,
                        const std::string& handlerKey);
inline void start_service(RuntimeState& rt, const Intent& intent);
inline void stop_service(RuntimeState& rt, const Intent& intent);

namespace detail {

// Executes one action. Returns a fault to the caller instead of throwing;
// run_handler owns the catch semantics.
inline std::optional<HandlerFault> exec_action(RuntimeState& rt,
                                               ComponentInstance& instance,
                                               const Action& action) {
  auto writer = rt.writer();
  const std::string& ctx = instance.decl->name;
  const std::int64_t now = rt.virtualNowMillis;

  return std::visit(
      [&](const auto& act) -> std::optional<HandlerFault> {
        using T = std::decay_t<decltype(act)>;
        if constexpr (std::is_same_v<T, ReadSourceAction>) {
          auto result = read_source(rt.device, act.field, rt.app.permissions);
          if (auto* fault = std::get_if<HandlerFault>(&result)) return *fault;
          instance.vars[act.var] = std::get<TaintedValue>(result);
          writer.append(now, ctx,
                        SourceReadPayload{std::string(field_key(act.field)),
                                          act.var});
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ReadClockAction>) {
          ClockReading reading = read_clock(rt.device);
          instance.vars[act.timeVar] = std::move(reading.timeMillis);
          instance.vars[act.dateVar] = std::move(reading.dateString);
          writer.append(now, ctx, SourceReadPayload{"clock", act.timeVar});
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, SetCriteriaAccuracyAction>) {
          auto result = set_criteria_accuracy(act.value);
          if (auto* fault = std::get_if<HandlerFault>(&result)) return *fault;
          writer.append(now, ctx,
                        CriteriaPayload{std::get<Criteria>(result).accuracy});
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, LogAction>) {
          auto msg = eval_template(act.messageTemplate, instance.vars);
          if (auto* fault = std::get_if<HandlerFault>(&msg)) return *fault;
          log_write(writer, now, ctx, act.priority, act.tag,
                    std::get<TaintedValue>(std::move(msg)));
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ToastAction>) {
          auto msg = eval_template(act.messageTemplate, instance.vars);
          if (auto* fault = std::get_if<HandlerFault>(&msg)) return *fault;
          toast_show(writer, now, ctx, std::get<TaintedValue>(std::move(msg)));
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, StartServiceAction>) {
          start_service(rt, Intent{ctx, act.target});
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, StopServiceAction>) {
          stop_service(rt, Intent{ctx, act.target});
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, StoreAction>) {
          auto value = eval_template(act.valueTemplate, instance.vars);
          if (auto* fault = std::get_if<HandlerFault>(&value)) return *fault;
          store_write(writer, now, ctx, act.key,
                      std::get<TaintedValue>(std::move(value)));
          return std::nullopt;
        } else {
          static_assert(std::is_same_v<T, SendAction>);
          auto payload = eval_template(act.payloadTemplate, instance.vars);
          if (auto* fault = std::get_if<HandlerFault>(&payload)) return *fault;
          return net_send(writer, now, ctx, act.endpoint,
                          std::get<TaintedValue>(std::move(payload)),
                          rt.app.permissions);
        }
      },
      action);
}

}  // namespace detail

// Runs one handler body with catch semantics: the first fault skips the
// remaining actions, lands a Fault trace entry, and runs the declared
// catch handler. Nothing escapes; a fault inside the catch body stops it
// with a second Fault entry.
inline void run_handler(RuntimeState& rt, ComponentInstance& instance,
                        const std::string& handlerKey) {
  auto writer = rt.writer();
  const std::string& ctx = instance.decl->name;
  const ActionList* actions = find_handler(instance.decl->handlers, handlerKey);
  if (!actions) {
    writer.append(rt.virtualNowMillis, ctx, CallbackPayload{handlerKey, true});
    return;
  }
  writer.append(rt.virtualNowMillis, ctx, CallbackPayload{handlerKey, false});

  std::optional<HandlerFault> fault;
  for (const auto& action : *actions) {
    fault = detail::exec_action(rt, instance, action);
    if (fault) break;
  }
  if (!fault) return;

  rt.writer().append(rt.virtualNowMillis, ctx,
                     FaultPayload{fault->kind, fault->detail});
  const ActionList* catchBody =
      find_handler(instance.decl->catchHandlers, handlerKey);
  if (!catchBody) return;
  for (const auto& action : *catchBody) {
    if (auto catchFault = detail::exec_action(rt, instance, action)) {
      rt.writer().append(rt.virtualNowMillis, ctx,
                         FaultPayload{catchFault->kind, catchFault->detail});
      break;
    }
  }
}

// startService: fresh target runs onCreate then onStart; an already
// running target runs onStart only.
inline void start_service(RuntimeState& rt, const Intent& intent) {
  auto it = rt.instances.find(intent.targetComponent);
  if (it == rt.instances.end() ||
      it->second.decl->kind != ComponentKind::Service) {
    throw DispatchError(DispatchErrorKind::TargetNotService,
                        intent.targetComponent);
  }
  ComponentInstance& instance = it->second;
  if (instance.state == InstanceState::Running) {
    run_handler(rt, instance, "onStart");
    return;
  }
  // DECLARED or DESTROYED: re-create as a fresh instance.
  instance.vars.clear();
  instance.createdAtMillis = rt.virtualNowMillis;
  instance.state = InstanceState::Created;
  run_handler(rt, instance, "onCreate");
  instance.state = InstanceState::Running;
  run_handler(rt, instance, "onStart");
}

// stopService: alive target runs onDestroy (the handler still sees its
// vars), then the instance is destroyed and its vars cleared. Stopping a
// dead service is a no-op.
inline void stop_service(RuntimeState& rt, const Intent& intent) {
  auto it = rt.instances.find(intent.targetComponent);
  if (it == rt.instances.end() ||
      it->second.decl->kind != ComponentKind::Service) {
    throw DispatchError(DispatchErrorKind::TargetNotService,
                        intent.targetComponent);
  }
  ComponentInstance& instance = it->second;
  if (instance.state != InstanceState::Running &&
      instance.state != InstanceState::Created) {
    return;
  }
  run_handler(rt, instance, "onDestroy");
  instance.state = InstanceState::Destroyed;
  instance.vars.clear();
}

// Advances virtual time and runs the event's whole cascade to completion.
inline void dispatch_event(RuntimeState& rt, const UserEvent& event) {
  if (event.atMillis < rt.virtualNowMillis) {
    throw DispatchError(DispatchErrorKind::NonMonotonicEventTime,
                        std::to_string(event.atMillis));
  }
  rt.virtualNowMillis = event.atMillis;

  if (event.kind == EventKind::Launch) {
    auto it = rt.instances.find(event.activity);
    if (it == rt.instances.end() ||
        it->second.decl->kind != ComponentKind::Activity) {
      throw DispatchError(DispatchErrorKind::UnknownActivity, event.activity);
    }
    rt.writer().append(rt.virtualNowMillis, event.activity,
                       UserEventPayload{"launch", event.activity});
    rt.foregroundActivity = event.activity;
    ComponentInstance& instance = it->second;
    if (instance.state == InstanceState::Declared) {
      instance.createdAtMillis = rt.virtualNowMillis;
      instance.state = InstanceState::Created;
      run_handler(rt, instance, "onCreate");
    }
    return;
  }

  if (!rt.foregroundActivity) {
    throw DispatchError(DispatchErrorKind::NoForegroundActivity, event.button);
  }
  ComponentInstance& activity = rt.instances.at(*rt.foregroundActivity);
  const auto& buttons = activity.decl->buttons;
  if (std::find(buttons.begin(), buttons.end(), event.button) ==
      buttons.end()) {
    throw DispatchError(DispatchErrorKind::UnknownButton, event.button);
  }
  rt.writer().append(rt.virtualNowMillis, activity.decl->name,
                     UserEventPayload{"click", event.button});
  run_handler(rt, activity, "onClick:" + event.button);
}

// Convenience: boot + replay a full script.
inline RuntimeState replay(AppDescriptor app, DeviceProfile device,
                           const EventScript& script) {
  RuntimeState rt = boot(std::move(app), std::move(device));
  for (const auto& event : script) {
    dispatch_event(rt, event);
  }
  return rt;
}

}  // namespace leaksim

#endif  // LEAKSIM_RUNTIME_HPP
