#ifndef LEAKSIM_TESTS_HELPERS_HPP
#define LEAKSIM_TESTS_HELPERS_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "leaksim/leaksim.hpp"

namespace leaksim::test {

inline AppDescriptor fixture_app() {
  return parse_app_descriptor(fixtures::kServiceDemoApp);
}

inline DeviceProfile fixture_device() {
  return parse_device_profile(fixtures::kEmulatorDevice);
}

inline EventScript fixture_events() {
  return parse_event_script(fixtures::kClicksEvents);
}

inline RuntimeState fixture_run() {
  return replay(fixture_app(), fixture_device(), fixture_events());
}

// Collects the handler names of all non-absent Callback entries for one
// component, in trace order.
inline std::vector<std::string> callbacks_of(const Trace& trace,
                                             const std::string& component) {
  std::vector<std::string> out;
  for (const auto& entry : trace) {
    if (entry.component != component) continue;
    if (const auto* cb = std::get_if<CallbackPayload>(&entry.payload)) {
      out.push_back(cb->handler);
    }
  }
  return out;
}

// --- randomized scenarios for lifecycle and taint properties ---

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// A random app of 1-4 components: one main activity whose buttons start
// and stop random services, plus services with plain (non-service-
// control) handler bodies. Service-control actions live only in activity
// handlers so the reference machine below stays independent of the
// engine's recursive execution.
struct RandomScenario {
  AppDescriptor app;
  EventScript script;
};

inline RandomScenario random_lifecycle_scenario(Rng& rng) {
  RandomScenario scenario;
  AppDescriptor& app = scenario.app;
  app.packageName = "com.example.random";
  app.minApi = 7;

  int serviceCount = pick(rng, 0, 3);
  std::vector<std::string> services;
  for (int i = 0; i < serviceCount; ++i) {
    services.push_back("Svc" + std::to_string(i));
  }

  ComponentDecl activity;
  activity.kind = ComponentKind::Activity;
  activity.name = "Main";
  activity.main = true;
  int buttonCount = pick(rng, 1, 4);
  for (int b = 0; b < buttonCount; ++b) {
    std::string button = "btn" + std::to_string(b);
    activity.buttons.push_back(button);
    ActionList actions;
    int actionCount = pick(rng, 0, 3);
    for (int a = 0; a < actionCount; ++a) {
      if (services.empty() || pick(rng, 0, 3) == 0) {
        actions.push_back(LogAction{LogPriority::D, "Main", "clicked"});
      } else {
        const std::string& target = services[pick(rng, 0, serviceCount - 1)];
        if (pick(rng, 0, 1) == 0) {
          actions.push_back(StartServiceAction{target});
        } else {
          actions.push_back(StopServiceAction{target});
        }
      }
    }
    activity.handlers.emplace_back("onClick:" + button, std::move(actions));
  }
  app.components.push_back(std::move(activity));

  for (const auto& name : services) {
    ComponentDecl svc;
    svc.kind = ComponentKind::Service;
    svc.name = name;
    for (const char* key : {"onCreate", "onStart", "onDestroy"}) {
      if (pick(rng, 0, 3) == 0) continue;  // sometimes absent
      ActionList actions;
      if (pick(rng, 0, 1) == 0) {
        actions.push_back(LogAction{LogPriority::D, name, key});
      }
      svc.handlers.emplace_back(key, std::move(actions));
    }
    app.components.push_back(std::move(svc));
  }

  std::int64_t at = 0;
  scenario.script.push_back({at, EventKind::Launch, "Main", ""});
  int clicks = pick(rng, 0, 12);
  for (int i = 0; i < clicks; ++i) {
    at += pick(rng, 1, 500);
    std::string button = "btn" + std::to_string(pick(rng, 0, buttonCount - 1));
    scenario.script.push_back({at, EventKind::Click, "", button});
  }
  return scenario;
}

// Independently coded started-service reference machine: predicts each
// service's callback sequence straight from the script and the activity's
// handler tables, without running the engine.
inline std::map<std::string, std::vector<std::string>> reference_callbacks(
    const RandomScenario& scenario) {
  std::map<std::string, std::vector<std::string>> expected;
  std::map<std::string, bool> running;
  for (const auto& comp : scenario.app.components) {
    if (comp.kind == ComponentKind::Service) {
      expected[comp.name] = {};
      running[comp.name] = false;
    }
  }
  const ComponentDecl* foreground = nullptr;
  for (const auto& event : scenario.script) {
    if (event.kind == EventKind::Launch) {
      foreground = scenario.app.find_component(event.activity);
      continue;
    }
    if (!foreground) continue;
    const ActionList* actions =
        find_handler(foreground->handlers, "onClick:" + event.button);
    if (!actions) continue;
    for (const auto& action : *actions) {
      if (const auto* s = std::get_if<StartServiceAction>(&action)) {
        if (!running[s->target]) {
          expected[s->target].push_back("onCreate");
          running[s->target] = true;
        }
        expected[s->target].push_back("onStart");
      } else if (const auto* s = std::get_if<StopServiceAction>(&action)) {
        if (running[s->target]) {
          expected[s->target].push_back("onDestroy");
          running[s->target] = false;
        }
      }
    }
  }
  return expected;
}

// Walks one service's callback history against onCreate (onStart)+
// onDestroy?, repeated per re-created instance.
inline bool lifecycle_well_formed(const std::vector<std::string>& callbacks) {
  enum { Down, Created, Started } state = Down;
  for (const auto& cb : callbacks) {
    if (cb == "onCreate") {
      if (state != Down) return false;
      state = Created;
    } else if (cb == "onStart") {
      if (state == Down) return false;
      state = Started;
    } else if (cb == "onDestroy") {
      if (state != Started) return false;
      state = Down;
    } else {
      return false;
    }
  }
  return state != Created;  // a created instance must have started
}

// --- sentinel scenarios for the taint soundness oracle ---

struct SentinelScenario {
  AppDescriptor app;
  DeviceProfile device;
  EventScript script;
};

// Sentinel profile: globally unique renderings per field where the field
// domain allows it. phoneType cannot carry a sentinel (range {0,1,2});
// the oracle below only checks fields whose rendering is unique.
inline DeviceProfile sentinel_device() {
  DeviceProfile device;
  device.imei = "111222333444555";
  device.msisdn = "66677788899";
  device.networkOperatorName = "OPERSENTQ";
  device.networkType = 424242;
  device.networkCountryIso = "zq";
  device.deviceSoftwareVersion = "VERSENTX";
  device.phoneType = 0;
  device.clockEpochMillis = 1305158400000;
  return device;
}

inline SentinelScenario random_taint_scenario(Rng& rng) {
  SentinelScenario scenario;
  scenario.device = sentinel_device();
  AppDescriptor& app = scenario.app;
  app.packageName = "com.example.sentinel";
  app.minApi = 7;
  app.permissions = {std::string(kReadPhoneState), std::string(kInternet)};

  ComponentDecl activity;
  activity.kind = ComponentKind::Activity;
  activity.name = "Main";
  activity.main = true;
  activity.buttons = {"go"};
  activity.handlers.emplace_back("onClick:go",
                                 ActionList{StartServiceAction{"Svc"}});
  app.components.push_back(std::move(activity));

  ComponentDecl svc;
  svc.kind = ComponentKind::Service;
  svc.name = "Svc";
  ActionList body;
  std::vector<std::string> bound;
  int readCount = pick(rng, 1, 7);
  for (int i = 0; i < readCount; ++i) {
    SourceField field = kAllSourceFields[pick(rng, 0, 6)];
    std::string var = "v" + std::string(field_key(field));
    body.push_back(ReadSourceAction{field, var});
    bound.push_back(var);
  }
  if (pick(rng, 0, 1) == 0) {
    body.push_back(ReadClockAction{"vtime", "vdate"});
    bound.push_back("vtime");
    bound.push_back("vdate");
  }
  int sinkCount = pick(rng, 1, 5);
  for (int i = 0; i < sinkCount; ++i) {
    std::string tmpl = "x";
    int parts = pick(rng, 0, 3);
    for (int p = 0; p < parts; ++p) {
      tmpl += "{" + bound[static_cast<std::size_t>(
                        pick(rng, 0, static_cast<int>(bound.size()) - 1))] +
              "}y";
    }
    switch (pick(rng, 0, 2)) {
      case 0:
        body.push_back(LogAction{LogPriority::I, "t", tmpl});
        break;
      case 1:
        body.push_back(StoreAction{"k" + std::to_string(i), tmpl});
        break;
      default:
        body.push_back(SendAction{"collector", tmpl});
        break;
    }
  }
  svc.handlers.emplace_back("onStart", std::move(body));
  app.components.push_back(std::move(svc));

  scenario.script = {{0, EventKind::Launch, "Main", ""},
                     {10, EventKind::Click, "", "go"}};
  return scenario;
}

}  // namespace leaksim::test

#endif  // LEAKSIM_TESTS_HELPERS_HPP
