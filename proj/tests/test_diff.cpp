#include "doctest.h"
#include "gen/progen.hpp"
#include "helpers.hpp"
#include "oracle/oracle.hpp"
#include "spectec/runtime.hpp"
#include "spectec/validate.hpp"

using namespace spectec;

TEST_CASE("generated programs always validate") {
  for (uint64_t seed = 1; seed <= 300; ++seed) {
    auto c = progen::generate(0xfeed0000ull + seed);
    auto errors = rt::validate(c.module);
    for (auto& e : errors) MESSAGE("seed ", seed, ": ", e);
    REQUIRE(errors.empty());
  }
}

TEST_CASE("generation is reproducible for a fixed seed") {
  auto a = progen::generate(42);
  auto b = progen::generate(42);
  CHECK(a.entry == b.entry);
  CHECK(a.args == b.args);
  CHECK(a.module.funcs.size() == b.module.funcs.size());
}

TEST_CASE("the extracted interpreter agrees with the oracle on a sample") {
  const auto& fx = testutil::corpus_fixture();
  rt::Interpreter interp(fx.il, fx.anim.algorithms);
  int traps = 0;
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    auto c = progen::generate(0xd1ff0000ull + seed);

    rt::Config config;
    config.store = interp.instantiate(c.module);
    rt::TrapResult extracted =
        interp.invoke(config, config.store.exports.at(c.entry), c.args);

    auto state = oracle::oracle_instantiate(c.module);
    rt::TrapResult reference =
        oracle::oracle_invoke(state, c.module.exports.at(c.entry), c.args);

    if (extracted.trapped) ++traps;
    INFO("seed ", seed, " entry ", c.entry);
    REQUIRE(extracted == reference);
  }
  // the mix should include some trapping programs
  CHECK(traps > 0);
  CHECK(traps < 1000);
}

TEST_CASE("global state evolves identically across repeated invokes") {
  const auto& fx = testutil::corpus_fixture();
  rt::Interpreter interp(fx.il, fx.anim.algorithms);
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    auto c = progen::generate(0xabba0000ull + seed);
    if (c.module.globals.empty()) continue;

    rt::Config config;
    config.store = interp.instantiate(c.module);
    auto state = oracle::oracle_instantiate(c.module);
    for (int round = 0; round < 3; ++round) {
      rt::TrapResult a =
          interp.invoke(config, config.store.exports.at(c.entry), c.args);
      rt::TrapResult b =
          oracle::oracle_invoke(state, c.module.exports.at(c.entry), c.args);
      REQUIRE(a == b);
      // compare the global cells too
      REQUIRE(config.store.globals.size() == state.globals.size());
      for (size_t i = 0; i < state.globals.size(); ++i)
        REQUIRE(config.store.globals[i].value == state.globals[i]);
    }
  }
}
