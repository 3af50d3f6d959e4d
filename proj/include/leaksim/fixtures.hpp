#ifndef LEAKSIM_FIXTURES_HPP
#define LEAKSIM_FIXTURES_HPP

#include <string_view>

namespace leaksim::fixtures {

// Bundled ServiceDemo scenario: an activity with start/stop buttons and a
// background service that harvests the telephony identity in onStart and
// dumps it to the log in onDestroy. The `demo` subcommand replays it with
// no filesystem arguments.

inline constexpr std::string_view kServiceDemoApp = R"json({
  "package": "com.example.ServiceDemo",
  "minApi": 7,
  "permissions": ["android.permission.READ_PHONE_STATE"],
  "components": [
    {
      "kind": "activity",
      "name": "ServiceDemo",
      "main": true,
      "buttons": ["buttonStart", "buttonStop"],
      "handlers": {
        "onCreate": [],
        "onClick:buttonStart": [
          {"op": "log", "priority": "D", "tag": "ServiceDemo", "template": "onClick: starting srvice"},
          {"op": "startService", "target": "MyService"}
        ],
        "onClick:buttonStop": [
          {"op": "log", "priority": "D", "tag": "ServiceDemo", "template": "onClick: stopping srvice"},
          {"op": "stopService", "target": "MyService"}
        ]
      }
    },
    {
      "kind": "service",
      "name": "MyService",
      "handlers": {
        "onCreate": [
          {"op": "toast", "template": "My Service Created"},
          {"op": "log", "priority": "D", "tag": "MyService", "template": "onCreate"}
        ],
        "onStart": [
          {"op": "toast", "template": "My Service Started"},
          {"op": "readSource", "field": "imei", "var": "imei"},
          {"op": "readSource", "field": "msisdn", "var": "msisdn"},
          {"op": "readSource", "field": "networkOperatorName", "var": "nwOp"},
          {"op": "readSource", "field": "networkType", "var": "nwtype"},
          {"op": "readSource", "field": "networkCountryIso", "var": "country"},
          {"op": "readSource", "field": "deviceSoftwareVersion", "var": "version"},
          {"op": "readSource", "field": "phoneType", "var": "phtype"},
          {"op": "setCriteriaAccuracy", "value": 2},
          {"op": "readClock", "timeVar": "time", "dateVar": "date"},
          {"op": "toast", "template": " all the values hav been read successfully"},
          {"op": "log", "priority": "D", "tag": "MyService", "template": "onStart"}
        ],
        "onDestroy": [
          {"op": "log", "priority": "D", "tag": "MyService", "template": "values of the different variables"},
          {"op": "log", "priority": "I", "tag": "imei", "template": "{imei}"},
          {"op": "log", "priority": "I", "tag": "network operator", "template": "{nwOp}"},
          {"op": "log", "priority": "I", "tag": "network type", "template": "{nwtype}"},
          {"op": "log", "priority": "I", "tag": "country", "template": "{country}"},
          {"op": "log", "priority": "I", "tag": "phtype", "template": "{phtype}"},
          {"op": "log", "priority": "I", "tag": "time", "template": "{time}"},
          {"op": "log", "priority": "I", "tag": "date", "template": "{date}"},
          {"op": "log", "priority": "I", "tag": "version", "template": "{version}"},
          {"op": "log", "priority": "I", "tag": "Phone number", "template": "{msisdn}"},
          {"op": "toast", "template": "My Service Stopped, Check Log now"},
          {"op": "log", "priority": "D", "tag": "MyService", "template": "onDestroy"}
        ]
      },
      "catch": {
        "onStart": [
          {"op": "log", "priority": "D", "tag": "MyService", "template": "Error in reading variables in onStart"}
        ],
        "onDestroy": [
          {"op": "log", "priority": "I", "tag": "MyService", "template": "error in writing different variables to logcat"}
        ]
      }
    }
  ]
})json";

inline constexpr std::string_view kEmulatorDevice = R"json({
  "imei": "000000000000000",
  "msisdn": "15555215554",
  "networkOperatorName": "Android",
  "networkType": 3,
  "networkCountryIso": "us",
  "deviceSoftwareVersion": "00",
  "phoneType": 1,
  "clockEpochMillis": 1305158400000
})json";

inline constexpr std::string_view kClicksEvents = R"json([
  {"atMillis": 0, "kind": "launch", "activity": "ServiceDemo"},
  {"atMillis": 100, "kind": "click", "button": "buttonStart"},
  {"atMillis": 5000, "kind": "click", "button": "buttonStop"}
])json";

}  // namespace leaksim::fixtures

#endif  // LEAKSIM_FIXTURES_HPP
