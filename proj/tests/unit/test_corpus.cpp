#include <doctest.h>

#include "bardsl/corpus/manifest.hpp"
#include "bardsl/corpus/stats.hpp"
#include "support.hpp"
#include "table1.hpp"

using namespace bardsl;
using namespace bardsl::corpus;

namespace {

std::string record(const std::string& id, const std::string& dsl, const std::string& extra = "") {
    nlohmann::ordered_json j{{"id", id},       {"problem", "p " + id}, {"dsl", dsl}, {"givens", {"8"}},
                             {"schema", "SumSplit"}, {"difficulty", "Easy"}, {"split", "train"}};
    std::string s = j.dump();
    if (!extra.empty()) s = s.substr(0, s.size() - 1) + "," + extra + "}";
    return s;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("three well-formed lines") {
    const std::string text = record("a", "HL \"8 ?\" 0 8") + "\n" + record("b", "HL \"x 8\" 0 1\nHB \"?\" N 0 0 1") +
                             "\n" + record("c", "HL \"8\" 0 3\nHL \"?\" 1 1\nCMP \"d\" 0 1") + "\n";
    auto m = parse_manifest(text);
    REQUIRE(m.ok());
    CHECK(m->instances.size() == 3);
    CHECK(m->failures.empty());
    CHECK(m->instances[2].program.statements.size() == 4);
    CHECK(operation_length(m->instances[2].program) == 4);
    CHECK(m->instances[0].meta.givens == std::vector<std::string>{"8"});
    CHECK(m->instances[0].meta.schema == verify::Schema::SumSplit);
}

TEST_CASE("bad dsl on line 2") {
    const std::string text = record("a", "HL \"x\" 0 1") + "\n" + record("b", "HL \"x\" 0 0") + "\n" +
                             record("c", "HL \"y\" 0 2") + "\n";
    auto m = parse_manifest(text);
    REQUIRE(m.ok());
    CHECK(m->instances.size() == 2);
    REQUIRE(m->failures.size() == 1);
    CHECK(m->failures[0].line == 2);
    CHECK(m->failures[0].cause.find("ZeroSegment") != std::string::npos);
}

TEST_CASE("record failures") {
    auto bad = [](const std::string& line) {
        auto r = parse_record(line, 7);
        REQUIRE_FALSE(r.ok());
        CHECK(r.error().line == 7);
        return r.error().cause;
    };
    bad("not json");
    bad("[1,2]");
    bad(R"({"id":"a","problem":"p","dsl":"HL \"x\" 0 1","schema":"Nope","difficulty":"Easy","split":"train"})");
    bad(R"({"id":"a","problem":"p","dsl":"HL \"x\" 0 1","schema":"SumSplit","difficulty":"Easy","split":"dev"})");
    bad(R"({"id":"a","problem":"p","dsl":"HL \"x\" 0 1","schema":"SumSplit","split":"train"})");
    bad(R"({"problem":"p","dsl":"HL \"x\" 0 1","schema":"SumSplit","difficulty":"Easy","split":"train"})");
    bad(R"({"id":"a","problem":"p","dsl":"HL \"x\" 0 1\nCMP \"d\" 0 1","schema":"SumSplit","difficulty":"Easy","split":"train"})");
    bad(R"({"id":"a","problem":"p","dsl":7,"schema":"SumSplit","difficulty":"Easy","split":"train"})");
}

TEST_CASE("optional fields") {
    auto r = parse_record(record("a", "HL \"x ?\" 0 1", R"("answer":12.5,"query_marker":"x","image_path":"img/a.png")"), 1);
    REQUIRE(r.ok());
    CHECK(r->meta.answer == 12.5);
    CHECK(r->meta.query_marker == "x");
    CHECK(r->image_path == "img/a.png");
    auto n = parse_record(record("a", "HL \"x ?\" 0 1", R"("answer":null)"), 1);
    REQUIRE(n.ok());
    CHECK_FALSE(n->meta.answer.has_value());
}

TEST_CASE("empty or all-bad files are fatal") {
    CHECK_FALSE(parse_manifest("").ok());
    CHECK(parse_manifest("").error().line == 0);
    CHECK_FALSE(parse_manifest("\n\n").ok());
    CHECK_FALSE(parse_manifest("garbage\n{}\n").ok());
    CHECK_FALSE(load_manifest(support::fixture_dir() / "does-not-exist.ndjson").ok());
}

TEST_CASE("blank lines are skipped but counted") {
    auto m = parse_manifest("\n" + record("a", "HL \"x\" 0 1") + "\n\nbroken\n");
    REQUIRE(m.ok());
    CHECK(m->instances.size() == 1);
    REQUIRE(m->failures.size() == 1);
    CHECK(m->failures[0].line == 4);
}

TEST_CASE("load and save round trip") {
    const std::string text = record("a", "HL \"苹果 8\" 0 8") + "\n" +
                             record("b", "HL \"x\" 0 1\nHB \"?\" N 0 0 1", R"("answer":3)") + "\n";
    auto m = parse_manifest(text);
    REQUIRE(m.ok());
    const std::string saved = save_manifest_text(m->instances);
    auto again = parse_manifest(saved);
    REQUIRE(again.ok());
    CHECK(save_manifest_text(again->instances) == saved);
    CHECK(again->instances[1].meta == m->instances[1].meta);
    CHECK(again->instances[0].dsl == m->instances[0].dsl);

    auto fixture = load_manifest(support::fixture_dir() / "twd" / "manifest.ndjson");
    REQUIRE(fixture.ok());
    const std::string fixture_saved = save_manifest_text(fixture->instances);
    CHECK(save_manifest_text(parse_manifest(fixture_saved).value().instances) == fixture_saved);
}

TEST_CASE("operation length buckets") {
    CHECK(oplen_bucket(1) == 0);
    CHECK(oplen_bucket(3) == 0);
    CHECK(oplen_bucket(4) == 1);
    CHECK(oplen_bucket(7) == 4);
    CHECK(oplen_bucket(8) == 5);
    CHECK(oplen_bucket(40) == 5);
    CHECK(std::string(oplen_bucket_name(0)) == "<=3");
    CHECK(std::string(oplen_bucket_name(5)) == ">=8");
    CHECK(operation_length(support::parse_ok("HL \"a\" 0 1\nHL \"b\" 1 1\nVL 1 0 1\nHB \"h\" N 0 0 1\nVB \"v\" 2 0 1")) == 5);
}

TEST_CASE("single instance") {
    auto m = parse_manifest(record("a", "HL \"x\" 0 1"));
    REQUIRE(m.ok());
    const auto s = stats(m->instances);
    CHECK(s.train.total == 1);
    CHECK(s.train.consistent());
    CHECK(s.test.total == 0);
    CHECK(s.train.by_oplen[0] == 1);
}

TEST_CASE("published bucket counts") {
    auto train = parse_manifest(table1::manifest(table1::kTrain));
    auto test = parse_manifest(table1::manifest(table1::kTest));
    REQUIRE(train.ok());
    REQUIRE(test.ok());
    CHECK(train->failures.empty());
    auto all = train->instances;
    all.insert(all.end(), test->instances.begin(), test->instances.end());
    const auto s = stats(all);
    for (const auto* c : {&table1::kTrain, &table1::kTest}) {
        const auto& st = s.of(split_from_string(c->split).value());
        CHECK(st.total == c->total);
        CHECK(st.consistent());
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(st.by_schema.at(verify::schema_from_string(table1::kSchemaNames[k]).value()) == c->schema[k]);
        }
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(st.by_difficulty.at(verify::difficulty_from_string(table1::kDifficultyNames[k]).value()) ==
                  c->difficulty[k]);
        }
        for (std::size_t k = 0; k < 6; ++k) CHECK(st.by_oplen[k] == c->oplen[k]);
    }
    const std::string table = stats_table(s);
    CHECK(table.find("10,430") != std::string::npos);
    CHECK(table.find("942") != std::string::npos);
    CHECK(table.find("4,265") != std::string::npos);
    CHECK(table.find("1,0,") == std::string::npos);
    const auto j = to_json(s);
    CHECK(j["train"]["total"] == 10430);
}

TEST_CASE("merge is commutative") {
    auto a = parse_manifest(table1::manifest(table1::kTest)).value();
    const std::size_t half = a.instances.size() / 2;
    const std::span<const Instance> all(a.instances);
    auto left = stats(all.subspan(0, half));
    auto right = stats(all.subspan(half));
    auto lr = left;
    lr.merge(right);
    auto rl = right;
    rl.merge(left);
    CHECK(lr == rl);
    CHECK(lr == stats(all));
}

}  // TEST_SUITE
