#include <doctest.h>

#include <random>

#include "bardsl/dsl/macros.hpp"
#include "bardsl/dsl/number.hpp"
#include "bardsl/dsl/parser.hpp"
#include "bardsl/dsl/printer.hpp"
#include "support.hpp"

using namespace bardsl;
using namespace bardsl::dsl;

namespace {

ParseError parse_err(const std::string& text) {
    auto r = parse(text);
    REQUIRE_FALSE(r.ok());
    return r.error();
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("HL with signed segments") {
    auto p = support::parse_ok("HL \"A\" 0 3 -2");
    REQUIRE(p.statements.size() == 1);
    const auto& hl = std::get<HorizontalLine>(p.statements[0]);
    CHECK(hl.name == "A");
    CHECK(hl.row == 0);
    CHECK(hl.segments == std::vector<double>{3, -2});
}

TEST_CASE("VL operands") {
    auto p = support::parse_ok("VL 3 0 1");
    CHECK(std::get<VerticalLink>(p.statements[0]) == VerticalLink{3, 0, 1});
}

TEST_CASE("every statement kind") {
    auto p = support::parse_ok(
        "HL \"a\" 0 1.5 -2\nVL 1.5 0 1\nHB \"t ?\" S 0 0 3.5\nVB \"sum\" 4 0 2\nCMP \"d\" 0 1\n");
    REQUIRE(p.statements.size() == 5);
    CHECK(std::get<HorizontalBrace>(p.statements[2]) == HorizontalBrace{"t ?", Side::South, 0, 0, 3.5});
    CHECK(std::get<VerticalBrace>(p.statements[3]) == VerticalBrace{"sum", 4, 0, 2});
    CHECK(std::get<Compare>(p.statements[4]) == Compare{"d", 0, 1});
    CHECK(p.has_macros());
    CHECK(p.labels() == std::vector<std::string>{"a", "t ?", "sum", "d"});
}

TEST_CASE("VB with rows out of order is located on line 2") {
    const auto e = parse_err("HB \"total ?\" N 0 0 5\nVB \"sum\" 6 1 0");
    CHECK(e.line == 2);
    CHECK(e.kind == ParseErrorKind::BadRowOrder);
    CHECK(e.column == 12);
}

TEST_CASE("error kinds and locations") {
    SUBCASE("unknown keyword") {
        const auto e = parse_err("HL \"A\" 0 1\n  XX 1 2");
        CHECK(e.kind == ParseErrorKind::UnknownKeyword);
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
    SUBCASE("lowercase keyword is unknown") { CHECK(parse_err("hl \"A\" 0 1").kind == ParseErrorKind::UnknownKeyword); }
    SUBCASE("statement starting with a string") { CHECK(parse_err("\"A\" 0 1").kind == ParseErrorKind::UnknownKeyword); }
    SUBCASE("malformed numbers") {
        for (const char* bad : {"HL \"A\" 0 1e3", "HL \"A\" 0 +1", "HL \"A\" 0 .5", "HL \"A\" 0 1.", "HL \"A\" 0 1..2",
                                "HL \"A\" 0 0x10", "HL \"A\" 0 --1", "HL \"A\" 0 1,5"}) {
            CAPTURE(bad);
            const auto e = parse_err(bad);
            CHECK(e.kind == ParseErrorKind::MalformedNumber);
            CHECK(e.column == 10);
        }
    }
    SUBCASE("row index must be a nonnegative integer") {
        CHECK(parse_err("HL \"A\" -1 1").kind == ParseErrorKind::MalformedNumber);
        CHECK(parse_err("HL \"A\" 1.5 1").kind == ParseErrorKind::MalformedNumber);
        CHECK(parse_err("HL \"A\" 1001 1").kind == ParseErrorKind::MalformedNumber);
        CHECK(support::parse_ok("HL \"A\" 1000 1").statements.size() == 1);
    }
    SUBCASE("magnitude bound") {
        CHECK(parse_err("HL \"A\" 0 1000001").kind == ParseErrorKind::MalformedNumber);
        CHECK(support::parse_ok("HL \"A\" 0 1000000 -1000000").statements.size() == 1);
    }
    SUBCASE("negative coordinates") {
        CHECK(parse_err("VL -1 0 1").kind == ParseErrorKind::MalformedNumber);
        CHECK(parse_err("HB \"x\" N 0 -1 2").kind == ParseErrorKind::MalformedNumber);
        CHECK(parse_err("VB \"x\" -2 0 1").kind == ParseErrorKind::MalformedNumber);
    }
    SUBCASE("unterminated string") {
        const auto e = parse_err("HL \"A 0 1");
        CHECK(e.kind == ParseErrorKind::UnterminatedString);
        CHECK(e.column == 4);
        CHECK(parse_err("HL \"A\\\" 0 1").kind == ParseErrorKind::UnterminatedString);
    }
    SUBCASE("arity") {
        CHECK(parse_err("HL \"A\" 0").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("VL 1 0").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("VL 1 0 1 2").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("VL 1 0 1 2").column == 10);
        CHECK(parse_err("HB \"x\" N 0 1").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("VB \"x\" 1 0").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("CMP \"x\" 0").kind == ParseErrorKind::ArityMismatch);
        CHECK(parse_err("HL A 0 1").kind == ParseErrorKind::ArityMismatch);
    }
    SUBCASE("string where a number is expected") {
        CHECK(parse_err("HL \"A\" 0 \"3\"").kind == ParseErrorKind::MalformedNumber);
        CHECK(parse_err("VL \"1\" 0 1").kind == ParseErrorKind::MalformedNumber);
    }
    SUBCASE("zero segment") {
        const auto e = parse_err("HL \"A\" 0 3 0");
        CHECK(e.kind == ParseErrorKind::ZeroSegment);
        CHECK(e.column == 12);
        CHECK(parse_err("HL \"A\" 0 -0.0").kind == ParseErrorKind::ZeroSegment);
    }
    SUBCASE("row order") {
        CHECK(parse_err("VL 1 1 1").kind == ParseErrorKind::BadRowOrder);
        CHECK(parse_err("VL 1 2 1").kind == ParseErrorKind::BadRowOrder);
        CHECK(parse_err("VB \"v\" 1 3 3").kind == ParseErrorKind::BadRowOrder);
        CHECK(parse_err("HB \"h\" N 0 3 3").kind == ParseErrorKind::BadRowOrder);
        CHECK(parse_err("HB \"h\" N 0 4 3").kind == ParseErrorKind::BadRowOrder);
    }
    SUBCASE("CMP with equal rows is deferred to expansion") {
        auto p = support::parse_ok("HL \"a\" 0 1\nCMP \"d\" 0 0");
        auto e = expand_macros(p);
        REQUIRE_FALSE(e.ok());
        CHECK(e.error().kind == ExpansionErrorKind::Degenerate);
    }
    SUBCASE("bad side") {
        const auto e = parse_err("HB \"h\" E 0 0 1");
        CHECK(e.kind == ParseErrorKind::BadSide);
        CHECK(e.column == 8);
        CHECK(parse_err("HB \"h\" \"N\" 0 0 1").kind == ParseErrorKind::BadSide);
    }
    SUBCASE("empty program") {
        for (const char* empty : {"", "\n\n", "# only a comment\n", "   \t  \n# x"}) {
            const auto e = parse_err(empty);
            CHECK(e.kind == ParseErrorKind::EmptyProgram);
            CHECK(e.line == 1);
            CHECK(e.column == 1);
        }
    }
    SUBCASE("first error wins") {
        const auto e = parse_err("HL \"A\" 0 1\nVL 1 1 0\nXX");
        CHECK(e.line == 2);
        CHECK(e.kind == ParseErrorKind::BadRowOrder);
    }
}

TEST_CASE("error formatting") {
    const auto e = parse_err("\nVL 1 0");
    CHECK(e.format("f.bardsl").rfind("f.bardsl:2:1: ArityMismatch: ", 0) == 0);
}

TEST_CASE("comments, blank lines and string escapes") {
    auto p = support::parse_ok("# heading\n\nHL \"a # not a comment\" 0 1 # trailing\n\t\nHB \"q\\\"x\\\\y\" N 0 0 1#c");
    REQUIRE(p.statements.size() == 2);
    CHECK(std::get<HorizontalLine>(p.statements[0]).name == "a # not a comment");
    CHECK(std::get<HorizontalBrace>(p.statements[1]).label == "q\"x\\y");
}

TEST_CASE("unrecognised escapes are kept literally") {
    auto p = support::parse_ok("HL \"a\\nb\" 0 1");
    CHECK(std::get<HorizontalLine>(p.statements[0]).name == "a\\nb");
    CHECK(canonical_print(p) == "HL \"a\\\\nb\" 0 1\n");
    CHECK(parse(canonical_print(p)).value() == p);
}

TEST_CASE("CRLF line endings") {
    auto p = support::parse_ok("HL \"A\" 0 1\r\nVL 1 0 1\r\n");
    CHECK(p.statements.size() == 2);
}

TEST_CASE("unicode payloads") {
    auto p = support::parse_ok("HL \"苹果 ?\" 0 3");
    CHECK(std::get<HorizontalLine>(p.statements[0]).name == "苹果 ?");
}

TEST_CASE("canonical print formatting") {
    Program p;
    p.statements.emplace_back(HorizontalLine{"A", 0, {3.0, -2.50}});
    CHECK(canonical_print(p) == "HL \"A\" 0 3 -2.5\n");
    CHECK(canonical_print(support::parse_ok("HL   \"A\"  0   3   # x")) == "HL \"A\" 0 3\n");
    CHECK(canonical_print(support::parse_ok("HB \"L\" S 2 0.50 10.000\nVB \"v\" 07 0 3")) ==
          "HB \"L\" S 2 0.5 10\nVB \"v\" 7 0 3\n");
}

TEST_CASE("number formatting") {
    CHECK(format_decimal(3) == "3");
    CHECK(format_decimal(-2.5) == "-2.5");
    CHECK(format_decimal(-0.0) == "0");
    CHECK(format_decimal(0.1) == "0.1");
    CHECK(format_decimal(1e6) == "1000000");
    CHECK(format_decimal(0.001) == "0.001");
    CHECK(format_fixed(93.6789, 2) == "93.68");
    CHECK(format_fixed(2.0, 2) == "2");
    CHECK(format_fixed(-0.001, 2) == "0");
    for (double v : {0.1, 0.2, 0.3, 1.0 / 3, 123.456, 999999.999}) {
        CAPTURE(v);
        CHECK(parse_decimal(format_decimal(v)).value() == v);
    }
    CHECK_FALSE(parse_decimal("").has_value());
    CHECK_FALSE(parse_decimal("-").has_value());
    CHECK(parse_decimal("-0").value() == 0);
    CHECK_FALSE(std::signbit(parse_decimal("-0").value()));
}

TEST_CASE("round trip and idempotence on fixtures") {
    for (const auto& path : support::fixture_programs()) {
        CAPTURE(path.filename().string());
        auto p = parse(support::read_file(path));
        REQUIRE(p.ok());
        const std::string once = canonical_print(*p);
        auto again = parse(once);
        REQUIRE(again.ok());
        CHECK(*again == *p);
        CHECK(canonical_print(*again) == once);
    }
}

TEST_CASE("round trip on random programs") {
    support::ProgramGen gen(17);
    for (int i = 0; i < 2000; ++i) {
        const Program p = gen.program();
        const std::string text = canonical_print(p);
        auto back = parse(text);
        REQUIRE_MESSAGE(back.ok(), text);
        CHECK(*back == p);
        CHECK(canonical_print(*back) == text);
    }
}

TEST_CASE("macro expansion") {
    SUBCASE("worked example") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 3 -2\nHL \"b\" 1 3\nCMP \"d?\" 0 1"));
        REQUIRE(e.ok());
        CHECK(canonical_print(*e) == "HL \"a\" 0 3 -2\nHL \"b\" 1 3\nVL 3 0 1\nHB \"d?\" S 0 3 5\n");
    }
    SUBCASE("rows given high to low") {
        auto e = expand_macros(support::parse_ok("HL \"s\" 0 3\nHL \"l\" 2 3 4\nCMP \"g\" 2 0"));
        REQUIRE(e.ok());
        CHECK(canonical_print(*e) == "HL \"s\" 0 3\nHL \"l\" 2 3 4\nVL 3 0 2\nHB \"g\" S 2 3 7\n");
    }
    SUBCASE("replacement is in place") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 5\nCMP \"d\" 0 1\nHL \"b\" 1 2\nHB \"x\" N 0 0 5"));
        REQUIRE(e.ok());
        REQUIRE(e->statements.size() == 5);
        CHECK(std::holds_alternative<VerticalLink>(e->statements[1]));
        CHECK(std::holds_alternative<HorizontalBrace>(e->statements[2]));
        CHECK(std::holds_alternative<HorizontalLine>(e->statements[3]));
    }
    SUBCASE("totals use absolute lengths") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 -4\nHL \"b\" 1 1 -1\nCMP \"d\" 0 1"));
        REQUIRE(e.ok());
        CHECK(std::get<VerticalLink>(e->statements[2]).x == 2);
        CHECK(std::get<HorizontalBrace>(e->statements[3]).x1 == 4);
    }
    SUBCASE("equal totals are degenerate") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 4\nHL \"b\" 1 2 2\nCMP \"d\" 0 1"));
        REQUIRE_FALSE(e.ok());
        CHECK(e.error().kind == ExpansionErrorKind::Degenerate);
        CHECK(e.error().statement == 2);
    }
    SUBCASE("missing bar") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 4\nCMP \"d\" 0 1"));
        REQUIRE_FALSE(e.ok());
        CHECK(e.error().kind == ExpansionErrorKind::MissingBar);
        CHECK(e.error().row == 1);
    }
    SUBCASE("multiple bars") {
        auto e = expand_macros(support::parse_ok("HL \"a\" 0 4\nHL \"c\" 0 4\nHL \"b\" 1 2\nCMP \"d\" 0 1"));
        REQUIRE_FALSE(e.ok());
        CHECK(e.error().kind == ExpansionErrorKind::MultipleBars);
    }
    SUBCASE("identity without macros and idempotence") {
        support::ProgramGen gen(5);
        for (int i = 0; i < 300; ++i) {
            const Program p = gen.program(false);
            CHECK(expand_macros(p).value() == p);
            auto q = gen.program(true);
            auto once = expand_macros(q);
            if (!once) continue;
            CHECK_FALSE(once->has_macros());
            CHECK(expand_macros(*once).value() == *once);
        }
    }
}

TEST_CASE("parse is total on random bytes") {
    std::mt19937_64 rng(99);
    const std::string alphabet = "HLVBCMP \"\\#-.0123456789NSE\t\nxyz\xe2\x82\xac\xff";
    for (int i = 0; i < 3000; ++i) {
        std::string s;
        const int n = static_cast<int>(rng() % 64);
        for (int k = 0; k < n; ++k) {
            s += (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
        }
        auto r = parse(s);
        if (!r) {
            CHECK(r.error().line >= 1);
            CHECK(r.error().column >= 1);
        }
    }
}

}  // TEST_SUITE
