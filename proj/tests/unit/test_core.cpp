#include <regex>

#include "doctest.h"

#include "gridstix/core/bundle.hpp"
#include "gridstix/errors.hpp"

#include "../support/generators.hpp"
#include "../support/test_support.hpp"

using namespace gridstix;
using namespace gridstix::core;

TEST_CASE("id grammar") {
    CHECK(valid_type_token("substation"));
    CHECK(valid_type_token("feeds-power-to"));
    CHECK(valid_type_token("x4"));
    CHECK_FALSE(valid_type_token("a"));           // minimum two characters
    CHECK_FALSE(valid_type_token("Substation"));  // no uppercase
    CHECK_FALSE(valid_type_token("-leading"));
    CHECK_FALSE(valid_type_token("trailing-"));
    CHECK(valid_type_token("weird--type"));  // the id grammar allows it; kebab does not

    CHECK(valid_uuid("00000000-0000-4000-8000-000000000001"));
    CHECK_FALSE(valid_uuid("00000000-0000-4000-8000-00000000000"));   // short
    CHECK_FALSE(valid_uuid("00000000-0000-4000-8000-00000000000G"));  // non-hex
    CHECK_FALSE(valid_uuid("00000000-0000-4000-8000-00000000000A"));  // uppercase

    CHECK(is_kebab_case("feeds-power-to"));
    CHECK(is_kebab_case("substation"));
    CHECK_FALSE(is_kebab_case("weird--type"));
    CHECK_FALSE(is_kebab_case("Bad-Name"));
}

TEST_CASE("id parse and split") {
    auto id = StixId::parse("substation--00000000-0000-4000-8000-000000000001");
    REQUIRE(id);
    CHECK(id->object_type() == "substation");
    CHECK(id->str() == "substation--00000000-0000-4000-8000-000000000001");

    // Split happens at the last "--" so double-hyphen tokens survive.
    auto weird = StixId::split("weird--type--00000000-0000-4000-8000-000000000001");
    REQUIRE(weird);
    CHECK(weird->object_type() == "weird--type");
    CHECK(weird->well_formed());  // id grammar passes; naming checks catch it

    CHECK_FALSE(StixId::split("substation"));
    CHECK_FALSE(StixId::parse("substation--notauuid"));
}

TEST_CASE("timestamps round-trip bit-exactly") {
    const std::string text = "2025-01-15T10:04:05.123Z";
    auto ts = Timestamp::parse(text);
    REQUIRE(ts);
    CHECK(ts->str() == text);

    CHECK_FALSE(Timestamp::parse("2025-01-15T10:04:05Z"));        // missing millis
    CHECK_FALSE(Timestamp::parse("2025-01-15T10:04:05.1234Z"));   // too many digits
    CHECK_FALSE(Timestamp::parse("2025-01-15 10:04:05.123Z"));    // bad separator
    CHECK_FALSE(Timestamp::parse("2025-02-30T10:04:05.123Z"));    // bad calendar day
    CHECK_FALSE(Timestamp::parse("2025-01-15T24:00:00.000Z"));    // bad hour
    CHECK(Timestamp::parse("2024-02-29T00:00:00.000Z"));          // leap day

    gstest::Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::string t = gstest::random_timestamp(rng);
        auto parsed = Timestamp::parse(t);
        REQUIRE(parsed);
        CHECK(parsed->str() == t);
    }
}

TEST_CASE("new_object") {
    auto asset = new_object("physical-asset", Json::object());
    const std::regex pattern("^physical-asset--[0-9a-f-]{36}$");
    CHECK(std::regex_match(asset.id().str(), pattern));
    CHECK(asset.spec_version() == "2.1");
    CHECK(asset.created() == asset.modified());

    CHECK_THROWS_AS(new_object("Physical-Asset", Json::object()), TokenError);

    auto again = new_object("physical-asset", Json::object());
    CHECK(asset.id() != again.id());
}

TEST_CASE("make_relationship") {
    const auto der = StixId::generate("distributed-energy-resource");
    const auto sub = StixId::generate("substation");
    auto link = make_relationship("feeds-power-to", der, sub, Json::object());
    CHECK(link.type() == "relationship");
    CHECK(link.relationship_type() == "feeds-power-to");
    CHECK(link.source_ref() == der);
    CHECK(link.target_ref() == sub);

    const auto relay = StixId::generate("protection-relay");
    CHECK_THROWS_AS(make_relationship("protects-asset", relay, relay, Json::object()),
                    SelfLoopError);

    auto contains = make_relationship("contains", StixId::generate("ot-device"),
                                      StixId::generate("ot-device"), Json::object());
    CHECK(contains.relationship_type() == "contains");
}

TEST_CASE("parse_bundle envelope rules") {
    auto empty = parse_bundle(R"({"type":"bundle","id":"bundle--00000000-0000-4000-8000-000000000001","objects":[]})");
    CHECK(empty.empty());

    auto one = parse_bundle(gstest::bundle_of({gstest::obj("substation", 1,
                                                           {{"name", "s"}})})
                                .serialize());
    CHECK(one.objects().front().id().object_type() == "substation");

    // id prefix and type property must agree
    Json bad = gstest::obj("substation", 2, {{"name", "s"}});
    bad["id"] = "transformer--" + gstest::uid(2);
    CHECK_THROWS_AS(gstest::bundle_of({bad}), EnvelopeError);

    // malformed document reports a byte offset
    try {
        parse_bundle("{\"type\": ");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.byte_offset() > 0);
    }

    // missing spec_version
    Json no_spec = gstest::obj("substation", 3, {{"name", "s"}});
    no_spec.erase("spec_version");
    CHECK_THROWS_AS(gstest::bundle_of({no_spec}), EnvelopeError);

    // relationship objects carry refs, others may not
    Json stray = gstest::obj("substation", 4, {{"name", "s"}});
    stray["source_ref"] = "substation--" + gstest::uid(1);
    CHECK_THROWS_AS(gstest::bundle_of({stray}), EnvelopeError);
    Json naked_rel = gstest::obj("relationship", 5, {{"relationship_type", "contains"}});
    CHECK_THROWS_AS(gstest::bundle_of({naked_rel}), EnvelopeError);
}

TEST_CASE("canonical serialization") {
    Json a = gstest::obj("substation", 1, {{"name", "s"}, {"zeta", 1}, {"alpha", 2}});
    Json b = gstest::obj("transformer", 2, {{"name", "t"}});

    const auto forward = gstest::bundle_of({a, b}).serialize();
    const auto reversed = gstest::bundle_of({b, a}).serialize();
    CHECK(forward == reversed);  // object order normalized

    // property insertion order does not matter either: rebuild a with the
    // same keys in a different order
    Json a2 = Json::object();
    a2["zeta"] = 1;
    a2["alpha"] = 2;
    a2["name"] = "s";
    a2["type"] = "substation";
    a2["id"] = a["id"];
    a2["spec_version"] = "2.1";
    a2["created"] = gstest::kTs;
    a2["modified"] = gstest::kTs;
    CHECK(gstest::bundle_of({a2, b}).serialize() == forward);

    // ascending id order in the output
    auto parsed = parse_bundle(forward);
    CHECK(parsed.objects().front().id().str() < parsed.objects().back().id().str());

    // canonical fixed point
    const auto once = serialize_bundle(parse_bundle(forward));
    CHECK(once == forward);
}

TEST_CASE("unknown properties survive a round trip") {
    Json odd = gstest::obj("mystery-widget", 9,
                           {{"unknown-blob", Json{{"deep", Json::array({1, 2.5, "x"})}}},
                            {"Weird Key", nullptr}});
    const auto text = gstest::bundle_of({odd}).serialize();
    const auto back = parse_bundle(text);
    const auto* blob = back.objects().front().find("unknown-blob");
    REQUIRE(blob != nullptr);
    CHECK((*blob)["deep"][1] == 2.5);
    CHECK(back.serialize() == text);
}

TEST_CASE("duplicate (id, modified) handling") {
    Json v1 = gstest::obj("substation", 1, {{"name", "s"}});
    Json v2 = v1;  // identical duplicate collapses
    CHECK(gstest::bundle_of({v1, v2}).size() == 1);

    Json conflicting = v1;
    conflicting["name"] = "other";
    CHECK_THROWS_AS(gstest::bundle_of({v1, conflicting}), EnvelopeError);

    Json later = v1;
    later["modified"] = "2025-02-01T00:00:00.000Z";
    later["name"] = "renamed";
    auto versions = gstest::bundle_of({v1, later});
    CHECK(versions.size() == 2);  // two versions may coexist
    const auto* latest = versions.find(versions.objects().front().id());
    REQUIRE(latest != nullptr);
    CHECK((*latest->find("name")) == "renamed");
}

TEST_CASE("round-trip property on random bundles") {
    gstest::Rng rng(1234);
    for (int i = 0; i < 60; ++i) {
        auto bundle = gstest::random_roundtrip_bundle(rng, 20);
        const auto text = bundle.serialize();
        auto reparsed = parse_bundle(text);
        CHECK(reparsed.serialize() == text);
        CHECK(reparsed == bundle);
    }
}
