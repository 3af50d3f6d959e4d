// leaksim: replays a declaratively described app against a mock telephony
// device and reports covert flows from identity sources to log/store/
// network sinks.
//
// Exit codes: 0 clean run, 3 leaks found, 2 descriptor validation error,
// 1 any other error. Standard output carries only the report/logcat;
// diagnostics go to standard error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "leaksim/leaksim.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitLeaks = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

struct RunConfig {
  std::string appPath;
  std::string devicePath;
  std::string eventsPath;
  std::string format = "text";
  std::string logcatOutPath;
  std::string storeOutPath;
  std::string traceOutPath;
};

int finish_run(leaksim::RuntimeState& rt, const RunConfig& config,
               bool printLogcat) {
  using namespace leaksim;
  FlowReport report = build_report(rt.trace, rt.app);
  if (printLogcat) {
    std::cout << render_logcat(rt.trace);
  }
  std::cout << render_report(report, config.format == "structured"
                                         ? ReportFormat::Structured
                                         : ReportFormat::Text);
  if (!config.logcatOutPath.empty()) {
    write_file(config.logcatOutPath, render_logcat(rt.trace));
  }
  if (!config.storeOutPath.empty()) {
    write_file(config.storeOutPath, render_store_dump(rt.trace));
  }
  if (!config.traceOutPath.empty()) {
    write_file(config.traceOutPath, render_trace(rt.trace));
  }
  return report.verdict == Verdict::Clean ? kExitClean : kExitLeaks;
}

int cmd_run(const RunConfig& config) {
  using namespace leaksim;
  AppDescriptor app;
  try {
    app = parse_app_descriptor(read_file(config.appPath));
  } catch (const ParseError& e) {
    std::cerr << "leaksim: " << config.appPath << ": " << e.what() << '\n';
    return kExitValidation;
  }
  DeviceProfile device = parse_device_profile(read_file(config.devicePath));
  EventScript script = parse_event_script(read_file(config.eventsPath));
  RuntimeState rt = replay(std::move(app), std::move(device), script);
  return finish_run(rt, config, /*printLogcat=*/false);
}

int cmd_demo() {
  using namespace leaksim;
  AppDescriptor app = parse_app_descriptor(fixtures::kServiceDemoApp);
  DeviceProfile device = parse_device_profile(fixtures::kEmulatorDevice);
  EventScript script = parse_event_script(fixtures::kClicksEvents);
  RuntimeState rt = replay(std::move(app), std::move(device), script);
  RunConfig config;
  return finish_run(rt, config, /*printLogcat=*/true);
}

int cmd_validate(const std::string& appPath) {
  using namespace leaksim;
  AppDescriptor app;
  try {
    app = parse_app_descriptor(read_file(appPath));
  } catch (const ParseError& e) {
    std::cerr << "leaksim: " << appPath << ": " << e.what() << '\n';
    return kExitValidation;
  }
  ValidationReport findings = validate_app(app);
  for (const auto& finding : findings) {
    std::cout << (finding.severity == FindingSeverity::Warn ? "WARN" : "INFO");
    if (!finding.component.empty()) {
      std::cout << " [" << finding.component << ']';
    }
    std::cout << ' ' << finding.message << '\n';
  }
  return findings.empty() ? kExitClean : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Android component-model sandbox with source-to-sink taint "
               "tracking"};
  cli.require_subcommand(1);

  RunConfig config;
  auto* run = cli.add_subcommand("run", "replay an app against a device");
  run->add_option("--app", config.appPath, "app descriptor path")->required();
  run->add_option("--device", config.devicePath, "device profile path")
      ->required();
  run->add_option("--events", config.eventsPath, "event script path")
      ->required();
  run->add_option("--format", config.format, "report format")
      ->check(CLI::IsMember({"text", "structured"}));
  run->add_option("--logcat", config.logcatOutPath, "write logcat dump here");
  run->add_option("--store", config.storeOutPath, "write store dump here");
  run->add_option("--trace", config.traceOutPath, "write trace dump here");

  auto* demo =
      cli.add_subcommand("demo", "replay the bundled ServiceDemo scenario");

  std::string validatePath;
  auto* validate = cli.add_subcommand("validate", "lint an app descriptor");
  validate->add_option("--app", validatePath, "app descriptor path")
      ->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? kExitClean : kExitError;
  }

  try {
    if (run->parsed()) return cmd_run(config);
    if (demo->parsed()) return cmd_demo();
    if (validate->parsed()) return cmd_validate(validatePath);
  } catch (const leaksim::ParseError& e) {
    std::cerr << "leaksim: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "leaksim: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
