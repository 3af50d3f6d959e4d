#ifndef LEAKSIM_DESCRIPTOR_HPP
#define LEAKSIM_DESCRIPTOR_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "leaksim/device.hpp"
#include "leaksim/errors.hpp"
#include "leaksim/taint.hpp"

namespace leaksim {

using json = nlohmann::ordered_json;

enum class LogPriority { D, I, E };

inline std::string_view to_string(LogPriority p) {
  switch (p) {
    case LogPriority::D: return "D";
    case LogPriority::I: return "I";
    case LogPriority::E: return "E";
  }
  return "?";
}

// One declarative statement in a handler body. Each op mirrors one kind of
// call an Android component makes: source reads, logging, toasts, service
// control, storage and network output.
struct ReadSourceAction {
  SourceField field;
  std::string var;

  bool operator==(const ReadSourceAction&) const = default;
};
struct ReadClockAction {
  std::string timeVar;
  std::string dateVar;

  bool operator==(const ReadClockAction&) const = default;
};
struct SetCriteriaAccuracyAction {
  int value;

  bool operator==(const SetCriteriaAccuracyAction&) const = default;
};
struct LogAction {
  LogPriority priority;
  std::string tag;
  std::string messageTemplate;

  bool operator==(const LogAction&) const = default;
};
struct ToastAction {
  std::string messageTemplate;

  bool operator==(const ToastAction&) const = default;
};
struct StartServiceAction {
  std::string target;

  bool operator==(const StartServiceAction&) const = default;
};
struct StopServiceAction {
  std::string target;

  bool operator==(const StopServiceAction&) const = default;
};
struct StoreAction {
  std::string key;
  std::string valueTemplate;

  bool operator==(const StoreAction&) const = default;
};
struct SendAction {
  std::string endpoint;
  std::string payloadTemplate;

  bool operator==(const SendAction&) const = default;
};

using Action =
    std::variant<ReadSourceAction, ReadClockAction, SetCriteriaAccuracyAction,
                 LogAction, ToastAction, StartServiceAction, StopServiceAction,
                 StoreAction, SendAction>;

using ActionList = std::vector<Action>;

// Handler tables keep document order; lookups are by exact key.
using HandlerTable = std::vector<std::pair<std::string, ActionList>>;

inline const ActionList* find_handler(const HandlerTable& table,
                                      std::string_view key) {
  for (const auto& [k, actions] : table) {
    if (k == key) return &actions;
  }
  return nullptr;
}

enum class ComponentKind { Activity, Service };

inline std::string_view to_string(ComponentKind k) {
  return k == ComponentKind::Activity ? "activity" : "service";
}

struct ComponentDecl {
  ComponentKind kind;
  std::string name;
  bool main = false;                  // activities only
  std::vector<std::string> buttons;   // activities only
  HandlerTable handlers;
  HandlerTable catchHandlers;

  bool operator==(const ComponentDecl&) const = default;
};

struct AppDescriptor {
  std::string packageName;
  int minApi = 1;
  PermissionSet permissions;
  std::vector<ComponentDecl> components;

  const ComponentDecl* find_component(std::string_view name) const {
    for (const auto& c : components) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  bool operator==(const AppDescriptor&) const = default;
};

enum class EventKind { Launch, Click };

struct UserEvent {
  std::int64_t atMillis = 0;
  EventKind kind = EventKind::Launch;
  std::string activity;  // launch
  std::string button;    // click

  bool operator==(const UserEvent&) const = default;
};

using EventScript = std::vector<UserEvent>;

namespace detail {

[[noreturn]] inline void malformed(const std::string& detail) {
  throw ParseError(ParseErrorKind::MalformedDocument, detail);
}

inline json parse_json(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) malformed("document is not valid JSON");
  return doc;
}

inline std::string require_string(const json& obj, const char* key,
                                  const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    malformed(where + ": missing or non-string field \"" + key + "\"");
  }
  return obj[key].get<std::string>();
}

inline std::int64_t require_int(const json& obj, const char* key,
                                const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    malformed(where + ": missing or non-integer field \"" + key + "\"");
  }
  return obj[key].get<std::int64_t>();
}

// Templates interpolate {var}; "{{" escapes a literal brace. An unclosed
// placeholder is a document error, not a runtime fault.
inline void check_template(const std::string& tmpl, const std::string& where) {
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      ++i;
      continue;
    }
    auto close = tmpl.find('}', i + 1);
    if (close == std::string::npos) {
      malformed(where + ": unclosed placeholder in template \"" + tmpl + "\"");
    }
    if (close == i + 1) {
      malformed(where + ": empty placeholder in template \"" + tmpl + "\"");
    }
    i = close;
  }
}

inline Action parse_action(const json& a, const std::string& where) {
  if (!a.is_object()) malformed(where + ": action is not an object");
  std::string op = require_string(a, "op", where);
  if (op == "readSource") {
    std::string fieldKey = require_string(a, "field", where);
    auto field = field_from_key(fieldKey);
    if (!field) malformed(where + ": unknown source field \"" + fieldKey + "\"");
    return ReadSourceAction{*field, require_string(a, "var", where)};
  }
  if (op == "readClock") {
    return ReadClockAction{require_string(a, "timeVar", where),
                           require_string(a, "dateVar", where)};
  }
  if (op == "setCriteriaAccuracy") {
    return SetCriteriaAccuracyAction{
        static_cast<int>(require_int(a, "value", where))};
  }
  if (op == "log") {
    std::string p = require_string(a, "priority", where);
    LogPriority priority;
    if (p == "D") priority = LogPriority::D;
    else if (p == "I") priority = LogPriority::I;
    else if (p == "E") priority = LogPriority::E;
    else malformed(where + ": invalid log priority \"" + p + "\"");
    std::string tmpl = require_string(a, "template", where);
    check_template(tmpl, where);
    return LogAction{priority, require_string(a, "tag", where), tmpl};
  }
  if (op == "toast") {
    std::string tmpl = require_string(a, "template", where);
    check_template(tmpl, where);
    return ToastAction{tmpl};
  }
  if (op == "startService") {
    return StartServiceAction{require_string(a, "target", where)};
  }
  if (op == "stopService") {
    return StopServiceAction{require_string(a, "target", where)};
  }
  if (op == "store") {
    std::string tmpl = require_string(a, "template", where);
    check_template(tmpl, where);
    return StoreAction{require_string(a, "key", where), tmpl};
  }
  if (op == "send") {
    std::string tmpl = require_string(a, "template", where);
    check_template(tmpl, where);
    return SendAction{require_string(a, "endpoint", where), tmpl};
  }
  throw ParseError(ParseErrorKind::UnknownActionOp,
                   where + ": \"" + op + "\"");
}

inline HandlerTable parse_handler_table(const json& obj,
                                        const ComponentDecl& comp,
                                        const std::string& where) {
  HandlerTable table;
  if (!obj.is_object()) malformed(where + ": handler table is not an object");
  for (const auto& [key, body] : obj.items()) {
    bool valid = false;
    if (comp.kind == ComponentKind::Activity) {
      if (key == "onCreate") {
        valid = true;
      } else if (key.rfind("onClick:", 0) == 0) {
        std::string button = key.substr(8);
        valid = std::find(comp.buttons.begin(), comp.buttons.end(), button) !=
                comp.buttons.end();
        if (!valid) {
          malformed(where + ": handler \"" + key +
                    "\" references undeclared button \"" + button + "\"");
        }
      }
    } else {
      valid = key == "onCreate" || key == "onStart" || key == "onDestroy";
    }
    if (!valid) {
      malformed(where + ": invalid handler key \"" + key + "\" for " +
                std::string(to_string(comp.kind)) + " \"" + comp.name + "\"");
    }
    if (!body.is_array()) {
      malformed(where + ": handler \"" + key + "\" body is not an array");
    }
    ActionList actions;
    for (const auto& a : body) {
      actions.push_back(parse_action(a, where + "." + key));
    }
    table.emplace_back(key, std::move(actions));
  }
  return table;
}

}  // namespace detail

inline AppDescriptor parse_app_descriptor(std::string_view text) {
  using namespace detail;
  json doc = parse_json(text);
  if (!doc.is_object()) malformed("app descriptor root is not an object");

  AppDescriptor app;
  app.packageName = require_string(doc, "package", "app");
  std::int64_t minApi = require_int(doc, "minApi", "app");
  if (minApi < 1) malformed("app: minApi must be positive");
  app.minApi = static_cast<int>(minApi);

  if (doc.contains("permissions")) {
    if (!doc["permissions"].is_array()) malformed("app: permissions is not an array");
    for (const auto& p : doc["permissions"]) {
      if (!p.is_string()) malformed("app: permission entry is not a string");
      app.permissions.insert(p.get<std::string>());
    }
  }

  if (!doc.contains("components") || !doc["components"].is_array()) {
    malformed("app: missing components array");
  }
  int mainCount = 0;
  bool anyActivity = false;
  for (const auto& c : doc["components"]) {
    if (!c.is_object()) malformed("app: component entry is not an object");
    ComponentDecl comp;
    comp.name = require_string(c, "name", "component");
    std::string where = "component \"" + comp.name + "\"";
    std::string kind = require_string(c, "kind", where);
    if (kind == "activity") {
      comp.kind = ComponentKind::Activity;
    } else if (kind == "service") {
      comp.kind = ComponentKind::Service;
    } else {
      throw ParseError(ParseErrorKind::UnknownComponentKind,
                       where + ": kind \"" + kind + "\"");
    }
    if (app.find_component(comp.name)) {
      throw ParseError(ParseErrorKind::DuplicateComponentName, comp.name);
    }
    if (comp.kind == ComponentKind::Activity) {
      anyActivity = true;
      if (c.contains("main")) {
        if (!c["main"].is_boolean()) malformed(where + ": main is not a boolean");
        comp.main = c["main"].get<bool>();
        if (comp.main) ++mainCount;
      }
      if (c.contains("buttons")) {
        if (!c["buttons"].is_array()) malformed(where + ": buttons is not an array");
        for (const auto& b : c["buttons"]) {
          if (!b.is_string()) malformed(where + ": button entry is not a string");
          comp.buttons.push_back(b.get<std::string>());
        }
      }
    } else if (c.contains("main") || c.contains("buttons")) {
      malformed(where + ": services cannot declare main or buttons");
    }
    if (c.contains("handlers")) {
      comp.handlers = parse_handler_table(c["handlers"], comp, where);
    }
    if (c.contains("catch")) {
      comp.catchHandlers = parse_handler_table(c["catch"], comp, where);
    }
    app.components.push_back(std::move(comp));
  }
  if (anyActivity && mainCount != 1) {
    malformed("app: exactly one activity must be marked main");
  }

  // Every service-control target must name a declared service.
  for (const auto& comp : app.components) {
    auto check = [&](const HandlerTable& table) {
      for (const auto& [key, actions] : table) {
        for (const auto& action : actions) {
          const std::string* target = nullptr;
          if (const auto* s = std::get_if<StartServiceAction>(&action)) {
            target = &s->target;
          } else if (const auto* s = std::get_if<StopServiceAction>(&action)) {
            target = &s->target;
          }
          if (!target) continue;
          const ComponentDecl* t = app.find_component(*target);
          if (!t || t->kind != ComponentKind::Service) {
            throw ParseError(ParseErrorKind::DanglingServiceTarget,
                             "component \"" + comp.name + "\" handler \"" +
                                 key + "\" targets \"" + *target + "\"");
          }
        }
      }
    };
    check(comp.handlers);
    check(comp.catchHandlers);
  }
  return app;
}

inline DeviceProfile parse_device_profile(std::string_view text) {
  using namespace detail;
  json doc = parse_json(text);
  if (!doc.is_object()) malformed("device profile root is not an object");

  DeviceProfile profile;  // defaults are the emulator placeholders
  auto get_string = [&](const char* key, std::string& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_string()) malformed(std::string("device: ") + key + " is not a string");
    out = doc[key].get<std::string>();
  };
  auto get_int = [&](const char* key, std::int64_t min, std::int64_t max) {
    std::int64_t fallback = -1;
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number_integer()) malformed(std::string("device: ") + key + " is not an integer");
    std::int64_t v = doc[key].get<std::int64_t>();
    if (v < min || v > max) {
      throw ParseError(ParseErrorKind::InvalidFieldValue,
                       std::string(key) + " = " + std::to_string(v));
    }
    return v;
  };

  get_string("imei", profile.imei);
  get_string("msisdn", profile.msisdn);
  get_string("networkOperatorName", profile.networkOperatorName);
  get_string("networkCountryIso", profile.networkCountryIso);
  get_string("deviceSoftwareVersion", profile.deviceSoftwareVersion);
  if (auto v = get_int("networkType", 0, std::numeric_limits<int>::max()); v >= 0) {
    profile.networkType = static_cast<int>(v);
  }
  if (auto v = get_int("phoneType", 0, 2); v >= 0) {
    profile.phoneType = static_cast<int>(v);
  }
  if (auto v = get_int("clockEpochMillis", 0,
                       std::numeric_limits<std::int64_t>::max());
      v >= 0) {
    profile.clockEpochMillis = v;
  }
  if (profile.networkCountryIso.size() != 2 ||
      !std::all_of(profile.networkCountryIso.begin(),
                   profile.networkCountryIso.end(),
                   [](unsigned char c) { return std::islower(c); })) {
    throw ParseError(ParseErrorKind::InvalidFieldValue,
                     "networkCountryIso = \"" + profile.networkCountryIso +
                         "\" (want 2 lowercase letters)");
  }
  return profile;
}

inline EventScript parse_event_script(std::string_view text) {
  using namespace detail;
  json doc = parse_json(text);
  if (!doc.is_array()) malformed("event script root is not an array");

  EventScript script;
  for (const auto& e : doc) {
    if (!e.is_object()) malformed("event entry is not an object");
    UserEvent ev;
    ev.atMillis = require_int(e, "atMillis", "event");
    if (ev.atMillis < 0) malformed("event: atMillis is negative");
    std::string kind = require_string(e, "kind", "event");
    if (kind == "launch") {
      ev.kind = EventKind::Launch;
      ev.activity = require_string(e, "activity", "launch event");
    } else if (kind == "click") {
      ev.kind = EventKind::Click;
      ev.button = require_string(e, "button", "click event");
    } else {
      malformed("event: unknown kind \"" + kind + "\"");
    }
    if (!script.empty() && ev.atMillis <= script.back().atMillis) {
      throw ParseError(ParseErrorKind::NonMonotonicTimestamps,
                       "atMillis " + std::to_string(ev.atMillis) +
                           " does not increase");
    }
    script.push_back(std::move(ev));
  }
  if (!script.empty() && script.front().kind != EventKind::Launch) {
    throw ParseError(ParseErrorKind::FirstEventNotLaunch,
                     "first event kind must be launch");
  }
  return script;
}

// --- serialization (round-trip counterparts of the parsers) ---

namespace detail {

inline json render_action(const Action& action) {
  json a = json::object();
  std::visit(
      [&](const auto& act) {
        using T = std::decay_t<decltype(act)>;
        if constexpr (std::is_same_v<T, ReadSourceAction>) {
          a["op"] = "readSource";
          a["field"] = std::string(field_key(act.field));
          a["var"] = act.var;
        } else if constexpr (std::is_same_v<T, ReadClockAction>) {
          a["op"] = "readClock";
          a["timeVar"] = act.timeVar;
          a["dateVar"] = act.dateVar;
        } else if constexpr (std::is_same_v<T, SetCriteriaAccuracyAction>) {
          a["op"] = "setCriteriaAccuracy";
          a["value"] = act.value;
        } else if constexpr (std::is_same_v<T, LogAction>) {
          a["op"] = "log";
          a["priority"] = std::string(to_string(act.priority));
          a["tag"] = act.tag;
          a["template"] = act.messageTemplate;
        } else if constexpr (std::is_same_v<T, ToastAction>) {
          a["op"] = "toast";
          a["template"] = act.messageTemplate;
        } else if constexpr (std::is_same_v<T, StartServiceAction>) {
          a["op"] = "startService";
          a["target"] = act.target;
        } else if constexpr (std::is_same_v<T, StopServiceAction>) {
          a["op"] = "stopService";
          a["target"] = act.target;
        } else if constexpr (std::is_same_v<T, StoreAction>) {
          a["op"] = "store";
          a["key"] = act.key;
          a["template"] = act.valueTemplate;
        } else if constexpr (std::is_same_v<T, SendAction>) {
          a["op"] = "send";
          a["endpoint"] = act.endpoint;
          a["template"] = act.payloadTemplate;
        }
      },
      action);
  return a;
}

inline json render_handler_table(const HandlerTable& table) {
  json obj = json::object();
  for (const auto& [key, actions] : table) {
    json body = json::array();
    for (const auto& a : actions) body.push_back(render_action(a));
    obj[key] = std::move(body);
  }
  return obj;
}

}  // namespace detail

inline std::string render_app_descriptor(const AppDescriptor& app) {
  json doc;
  doc["package"] = app.packageName;
  doc["minApi"] = app.minApi;
  doc["permissions"] = json::array();
  for (const auto& p : app.permissions) doc["permissions"].push_back(p);
  doc["components"] = json::array();
  for (const auto& comp : app.components) {
    json c;
    c["kind"] = std::string(to_string(comp.kind));
    c["name"] = comp.name;
    if (comp.kind == ComponentKind::Activity) {
      if (comp.main) c["main"] = true;
      if (!comp.buttons.empty()) c["buttons"] = comp.buttons;
    }
    c["handlers"] = detail::render_handler_table(comp.handlers);
    if (!comp.catchHandlers.empty()) {
      c["catch"] = detail::render_handler_table(comp.catchHandlers);
    }
    doc["components"].push_back(std::move(c));
  }
  return doc.dump(2);
}

inline std::string render_device_profile(const DeviceProfile& p) {
  json doc;
  doc["imei"] = p.imei;
  doc["msisdn"] = p.msisdn;
  doc["networkOperatorName"] = p.networkOperatorName;
  doc["networkType"] = p.networkType;
  doc["networkCountryIso"] = p.networkCountryIso;
  doc["deviceSoftwareVersion"] = p.deviceSoftwareVersion;
  doc["phoneType"] = p.phoneType;
  doc["clockEpochMillis"] = p.clockEpochMillis;
  return doc.dump(2);
}

inline std::string render_event_script(const EventScript& script) {
  json doc = json::array();
  for (const auto& e : script) {
    json ev;
    ev["atMillis"] = e.atMillis;
    ev["kind"] = e.kind == EventKind::Launch ? "launch" : "click";
    if (e.kind == EventKind::Launch) ev["activity"] = e.activity;
    else ev["button"] = e.button;
    doc.push_back(std::move(ev));
  }
  return doc.dump(2);
}

// --- semantic lint beyond parse-time invariants ---

enum class FindingSeverity { Warn, Info };

struct Finding {
  FindingSeverity severity;
  std::string component;  // empty for app-level findings
  std::string message;

  bool operator==(const Finding&) const = default;
};

using ValidationReport = std::vector<Finding>;

inline ValidationReport validate_app(const AppDescriptor& app) {
  ValidationReport findings;
  PermissionSet used;

  auto scan = [&](const ComponentDecl& comp, const HandlerTable& table) {
    for (const auto& [key, actions] : table) {
      for (const auto& action : actions) {
        if (const auto* r = std::get_if<ReadSourceAction>(&action)) {
          if (auto perm = required_permission(r->field)) {
            used.insert(std::string(*perm));
            if (app.permissions.find(*perm) == app.permissions.end()) {
              findings.push_back(
                  {FindingSeverity::Warn, comp.name,
                   "handler \"" + key + "\": readSource(" +
                       std::string(field_key(r->field)) + ") requires " +
                       std::string(*perm) + " which is not declared"});
            }
          }
        } else if (std::holds_alternative<SendAction>(action)) {
          used.insert(std::string(kInternet));
        }
      }
    }
  };
  for (const auto& comp : app.components) {
    scan(comp, comp.handlers);
    scan(comp, comp.catchHandlers);
  }
  for (const auto& perm : app.permissions) {
    if (used.find(perm) == used.end()) {
      findings.push_back({FindingSeverity::Info, "",
                          "permission " + perm + " is declared but unused"});
    }
  }
  return findings;
}

}  // namespace leaksim

#endif  // LEAKSIM_DESCRIPTOR_HPP
