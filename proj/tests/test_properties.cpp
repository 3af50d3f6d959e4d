#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "leaksim/leaksim.hpp"

using namespace leaksim;

TEST_CASE("property: service callbacks match the reference state machine") {
  test::Rng rng(20110512);
  for (int i = 0; i < 1000; ++i) {
    auto scenario = test::random_lifecycle_scenario(rng);
    auto expected = test::reference_callbacks(scenario);
    RuntimeState rt =
        replay(scenario.app, test::fixture_device(), scenario.script);

    for (const auto& [service, callbacks] : expected) {
      INFO("iteration " << i << ", service " << service);
      auto actual = test::callbacks_of(rt.trace, service);
      CHECK(actual == callbacks);
      CHECK(test::lifecycle_well_formed(actual));
    }
  }
}

TEST_CASE("property: onCreate happens at most once per instance") {
  test::Rng rng(4242);
  for (int i = 0; i < 200; ++i) {
    auto scenario = test::random_lifecycle_scenario(rng);
    RuntimeState rt =
        replay(scenario.app, test::fixture_device(), scenario.script);
    for (const auto& comp : rt.app.components) {
      if (comp.kind != ComponentKind::Service) continue;
      auto callbacks = test::callbacks_of(rt.trace, comp.name);
      bool alive = false;
      for (const auto& cb : callbacks) {
        if (cb == "onCreate") {
          CHECK(!alive);
          alive = true;
        } else if (cb == "onDestroy") {
          alive = false;
        }
      }
    }
  }
}

TEST_CASE("property: randomized traces keep seq gap-free and time monotone") {
  test::Rng rng(31337);
  for (int i = 0; i < 100; ++i) {
    auto scenario = test::random_lifecycle_scenario(rng);
    RuntimeState rt =
        replay(scenario.app, test::fixture_device(), scenario.script);
    for (std::size_t s = 0; s < rt.trace.size(); ++s) {
      CHECK(rt.trace[s].seq == s);
      if (s > 0) CHECK(rt.trace[s].atMillis >= rt.trace[s - 1].atMillis);
    }
  }
}

namespace {

// Fields whose sentinel rendering is globally unique within the run:
// long enough and not a substring of any other produced string.
std::vector<SourceField> checkable_fields(const DeviceProfile& device) {
  std::vector<std::string> renderings;
  for (SourceField f : kAllSourceFields) {
    renderings.push_back(render_field(device, f));
  }
  renderings.push_back(std::to_string(device.clockEpochMillis));
  renderings.push_back(render_clock_date(device.clockEpochMillis));

  std::vector<SourceField> out;
  for (SourceField f : kAllSourceFields) {
    const std::string& mine = render_field(device, f);
    if (mine.size() < 4) continue;
    bool unique = true;
    for (const auto& other : renderings) {
      if (other != mine && other.find(mine) != std::string::npos) {
        unique = false;
      }
    }
    if (unique) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("property: sentinel substring in a sink implies its taint label") {
  test::Rng rng(8675309);
  DeviceProfile device = test::sentinel_device();
  auto fields = checkable_fields(device);
  REQUIRE(fields.size() >= 5);

  for (int i = 0; i < 200; ++i) {
    auto scenario = test::random_taint_scenario(rng);
    RuntimeState rt =
        replay(scenario.app, scenario.device, scenario.script);

    for (const auto& entry : rt.trace) {
      const TaintedValue* sink = nullptr;
      if (const auto* p = std::get_if<LogPayload>(&entry.payload)) {
        sink = &p->message;
      } else if (const auto* p = std::get_if<StorePayload>(&entry.payload)) {
        sink = &p->value;
      } else if (const auto* p = std::get_if<NetSendPayload>(&entry.payload)) {
        sink = &p->payload;
      }
      if (!sink) continue;
      for (SourceField f : fields) {
        if (sink->value.find(render_field(device, f)) != std::string::npos) {
          INFO("iteration " << i << ": sink value \"" << sink->value
                            << "\" contains sentinel for " << to_string(f));
          CHECK(sink->taints.count(f) == 1);
        }
      }
    }
  }
}
