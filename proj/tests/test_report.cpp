#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "leaksim/leaksim.hpp"

using namespace leaksim;

TEST_CASE("fixture run yields exactly seven undisclosed log flows") {
  RuntimeState rt = test::fixture_run();
  FlowReport report = build_report(rt.trace, rt.app);

  REQUIRE(report.flows.size() == 7);
  TaintSet covered;
  for (const auto& flow : report.flows) {
    CHECK(flow.sinkKind == SinkKind::Log);
    CHECK(flow.component == "MyService");
    CHECK(flow.componentKind == ComponentKind::Service);
    CHECK(!flow.disclosed);
    covered.insert(flow.sourceLabels.begin(), flow.sourceLabels.end());
  }
  CHECK(covered == TaintSet(kAllSourceFields.begin(), kAllSourceFields.end()));
  CHECK(report.verdict == Verdict::LeaksFound);

  REQUIRE(report.summary.size() == 1);
  CHECK(report.summary[0].componentKind == ComponentKind::Service);
  CHECK(report.summary[0].sinkKind == SinkKind::Log);
  CHECK(!report.summary[0].disclosed);
  CHECK(report.summary[0].count == 7);
}

TEST_CASE("empty trace yields no flows and a CLEAN verdict") {
  FlowReport report = build_report({}, AppDescriptor{});
  CHECK(report.flows.empty());
  CHECK(report.verdict == Verdict::Clean);
}

TEST_CASE("a tainted toast is not a flow") {
  Trace trace;
  std::uint64_t seq = 0;
  TraceWriter writer(trace, seq);
  toast_show(writer, 0, "Svc", {"000000000000000", {SourceField::IMEI}});
  CHECK(extract_flows(trace, AppDescriptor{}).empty());
}

TEST_CASE("disclosure requires a prior taint-superset toast") {
  Trace trace;
  std::uint64_t seq = 0;
  TraceWriter writer(trace, seq);

  SECTION("toast of the value before logging it discloses the flow") {
    toast_show(writer, 0, "Svc", {"000", {SourceField::IMEI}});
    log_write(writer, 0, "Svc", LogPriority::I, "imei",
              {"000", {SourceField::IMEI}});
    FlowReport report = build_report(trace, AppDescriptor{});
    REQUIRE(report.flows.size() == 1);
    CHECK(report.flows[0].disclosed);
    CHECK(report.verdict == Verdict::Clean);
  }
  SECTION("a strict-subset toast does not disclose") {
    toast_show(writer, 0, "Svc", {"000", {SourceField::IMEI}});
    log_write(writer, 0, "Svc", LogPriority::I, "both",
              {"000 555", {SourceField::IMEI, SourceField::MSISDN}});
    FlowReport report = build_report(trace, AppDescriptor{});
    REQUIRE(report.flows.size() == 1);
    CHECK(!report.flows[0].disclosed);
    CHECK(report.verdict == Verdict::LeaksFound);
  }
  SECTION("a later toast does not disclose an earlier flow") {
    log_write(writer, 0, "Svc", LogPriority::I, "imei",
              {"000", {SourceField::IMEI}});
    toast_show(writer, 0, "Svc", {"000", {SourceField::IMEI}});
    FlowReport report = build_report(trace, AppDescriptor{});
    REQUIRE(report.flows.size() == 1);
    CHECK(!report.flows[0].disclosed);
  }
}

TEST_CASE("triggering event attribution uses the most recent user event") {
  RuntimeState rt = test::fixture_run();
  FlowReport report = build_report(rt.trace, rt.app);
  for (const auto& flow : report.flows) {
    REQUIRE(flow.triggeringEvent);
    CHECK(flow.triggeringEvent->eventKind == "click");
    CHECK(flow.triggeringEvent->detail == "buttonStop");
    CHECK(flow.triggeringEvent->atMillis == 5000);
  }
}

TEST_CASE("property: flow extraction is complete and order-preserving") {
  test::Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    auto scenario = test::random_taint_scenario(rng);
    RuntimeState rt =
        replay(scenario.app, scenario.device, scenario.script);
    auto flows = extract_flows(rt.trace, rt.app);

    // brute-force rescan: count sink entries with non-empty taints
    std::size_t expected = 0;
    for (const auto& entry : rt.trace) {
      const TaintSet* taints = nullptr;
      if (const auto* p = std::get_if<LogPayload>(&entry.payload)) {
        taints = &p->message.taints;
      } else if (const auto* p = std::get_if<StorePayload>(&entry.payload)) {
        taints = &p->value.taints;
      } else if (const auto* p = std::get_if<NetSendPayload>(&entry.payload)) {
        taints = &p->payload.taints;
      }
      if (taints && !taints->empty()) ++expected;
    }
    CHECK(flows.size() == expected);
    for (std::size_t f = 1; f < flows.size(); ++f) {
      CHECK(flows[f - 1].seq < flows[f].seq);
    }
  }
}

TEST_CASE("property: adding an earlier superset toast never undiscloses") {
  Trace trace;
  std::uint64_t seq = 0;
  TraceWriter writer(trace, seq);
  toast_show(writer, 0, "Svc", {"x", {SourceField::IMEI}});
  log_write(writer, 0, "Svc", LogPriority::I, "t", {"x", {SourceField::IMEI}});

  FlowReport before = build_report(trace, AppDescriptor{});
  REQUIRE(before.flows.size() == 1);
  CHECK(before.flows[0].disclosed);

  // prepend a toast carrying strictly more labels
  Trace widened;
  std::uint64_t wseq = 0;
  TraceWriter wwriter(widened, wseq);
  toast_show(wwriter, 0, "Svc",
             {"xy", {SourceField::IMEI, SourceField::MSISDN}});
  for (auto entry : trace) {
    entry.seq += 1;
    widened.push_back(std::move(entry));
  }
  FlowReport after = build_report(widened, AppDescriptor{});
  REQUIRE(after.flows.size() == 1);
  CHECK(after.flows[0].disclosed);
}

TEST_CASE("verdict is CLEAN iff every flow is disclosed") {
  test::Rng rng(123);
  for (int i = 0; i < 50; ++i) {
    auto scenario = test::random_taint_scenario(rng);
    RuntimeState rt =
        replay(scenario.app, scenario.device, scenario.script);
    FlowReport report = build_report(rt.trace, rt.app);
    bool allDisclosed = true;
    for (const auto& flow : report.flows) {
      allDisclosed = allDisclosed && flow.disclosed;
    }
    CHECK((report.verdict == Verdict::Clean) == allDisclosed);
  }
}

TEST_CASE("report rendering") {
  RuntimeState rt = test::fixture_run();
  FlowReport report = build_report(rt.trace, rt.app);

  SECTION("text format") {
    std::string text = render_report(report, ReportFormat::Text);
    CHECK(text.find("verdict: LEAKS_FOUND") != std::string::npos);
    CHECK(text.find("service (background)/log: 7 undisclosed") !=
          std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '[') == 7);
  }
  SECTION("structured format is machine-parseable with stable fields") {
    std::string text = render_report(report, ReportFormat::Structured);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["verdict"] == "LEAKS_FOUND");
    CHECK(doc["summary"].size() == 1);
    CHECK(doc["flows"].size() == 7);
    CHECK(doc["flows"][0]["sinkKind"] == "log");
  }
  SECTION("rendering is deterministic") {
    CHECK(render_report(report, ReportFormat::Text) ==
          render_report(report, ReportFormat::Text));
    CHECK(render_report(report, ReportFormat::Structured) ==
          render_report(report, ReportFormat::Structured));
  }
  SECTION("empty report renders CLEAN") {
    FlowReport empty;
    std::string text = render_report(empty, ReportFormat::Text);
    CHECK(text.find("verdict: CLEAN") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '[') == 0);
  }
}
