#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lazylab/environments.hpp"

using namespace lazylab;
using namespace lazylab::func;

namespace {

double num(const Binding& b) { return std::get<Num>(std::get<Value>(b)).value; }
Binding val(double d) { return Value{Num{d}}; }

}  // namespace

TEST_CASE("fresh global") {
    EnvRegistry envs;
    CHECK(!envs.frame(envs.global()).parent);
    CHECK(envs.frame(envs.global()).bindings.empty());
    CHECK_THROWS_AS(envs.lookup(envs.global(), "y"), UnboundName);
    envs.define(envs.global(), "y", val(6));
    CHECK(num(envs.lookup(envs.global(), "y")) == 6);
}

TEST_CASE("child lookup walks the chain") {
    EnvRegistry envs;
    envs.define(envs.global(), "y", val(6));
    EnvId c = envs.child(envs.global());
    CHECK(num(envs.lookup(c, "y")) == 6);
    envs.define(c, "x", val(1));
    CHECK(num(envs.lookup(c, "x")) == 1);
    CHECK_THROWS_AS(envs.lookup(envs.global(), "x"), UnboundName);
    CHECK_THROWS_AS(envs.lookup(c, "q"), UnboundName);
}

TEST_CASE("siblings are isolated") {
    EnvRegistry envs;
    EnvId a = envs.child(envs.global());
    EnvId b = envs.child(envs.global());
    envs.define(a, "a", val(1));
    CHECK_THROWS_AS(envs.lookup(b, "a"), UnboundName);
}

TEST_CASE("shadowing and define locality") {
    EnvRegistry envs;
    envs.define(envs.global(), "x", val(5));
    EnvId c = envs.child(envs.global());
    envs.define(c, "x", val(2));
    CHECK(num(envs.lookup(c, "x")) == 2);
    CHECK(num(envs.lookup(envs.global(), "x")) == 5);
    envs.define(c, "x", val(10));
    CHECK(num(envs.lookup(c, "x")) == 10);
}

TEST_CASE("discard") {
    TraceLog trace;
    EnvRegistry envs(&trace);
    EnvId c = envs.child(envs.global(), "call h");
    envs.define(c, "a", val(2));
    envs.discard(c);
    CHECK_FALSE(envs.is_live(c));
    CHECK_THROWS_AS(envs.lookup(c, "a"), DiscardedEnv);
    CHECK_THROWS_AS(envs.discard(c), DiscardedEnv);
    CHECK_THROWS_AS(envs.child(c), DiscardedEnv);
    CHECK_THROWS_AS(envs.define(c, "b", val(1)), DiscardedEnv);
    CHECK_THROWS_AS(envs.discard(envs.global()), CannotDiscardGlobal);
    // bindings stay around for inspection
    CHECK(envs.frame(c).bindings.count("a") == 1);
    REQUIRE(trace.size() == 2);
    CHECK(trace.events()[0].kind == TraceKind::EnvCreated);
    CHECK(trace.events()[0].subject == "env#1");
    CHECK(trace.events()[1].kind == TraceKind::EnvDiscarded);
    CHECK(envs.discarded_count() == 1);
}

TEST_CASE("property: unbound names fall through to the parent") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        EnvRegistry envs;
        std::vector<EnvId> frames{envs.global()};
        const char* names[] = {"a", "b", "c", "d", "e"};
        for (int step = 0; step < 30; ++step) {
            EnvId at = frames[rng() % frames.size()];
            if (rng() % 3 == 0) {
                frames.push_back(envs.child(at));
            } else {
                envs.define(at, names[rng() % 5], val(static_cast<double>(rng() % 100)));
            }
        }
        for (EnvId f : frames) {
            const Environment& frame = envs.frame(f);
            // chain length bounded by the number of frames
            std::size_t hops = 0;
            for (std::optional<EnvId> p = frame.parent; p; p = envs.frame(*p).parent) ++hops;
            CHECK(hops < frames.size());
            if (!frame.parent) continue;
            for (const char* n : names) {
                if (frame.bindings.count(n)) continue;
                bool parent_has = true;
                double parent_value = 0;
                try {
                    parent_value = num(envs.lookup(*frame.parent, n));
                } catch (const UnboundName&) {
                    parent_has = false;
                }
                if (parent_has) {
                    CHECK(num(envs.lookup(f, n)) == parent_value);
                } else {
                    CHECK_THROWS_AS(envs.lookup(f, n), UnboundName);
                }
            }
        }
    }
}

TEST_CASE("property: define in a child never changes the parent") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
        EnvRegistry envs;
        envs.define(envs.global(), "n", val(static_cast<double>(rng() % 50)));
        double before = num(envs.lookup(envs.global(), "n"));
        EnvId c = envs.child(envs.global());
        envs.define(c, "n", val(static_cast<double>(rng() % 50 + 100)));
        CHECK(num(envs.lookup(envs.global(), "n")) == before);
    }
}
