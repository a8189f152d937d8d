#include <doctest.h>

#include "bitblast/bitvec_io.hpp"
#include "bitblast/interp.hpp"
#include "helpers.hpp"

using namespace bitblast;

namespace {

ValueMap inputs_of(const std::string& assignment) {
    ValueMap m;
    auto [name, bits] = parse_assignment(assignment);
    m.set(name, std::move(bits));
    return m;
}

} // namespace

TEST_CASE("bitvec io: parse and format") {
    auto [name, bits] = parse_assignment("reg=0x5A3F7:19");
    CHECK(name == "reg");
    REQUIRE(bits.size() == 19);
    // 0x5A3F7 = 0b101_1010_0011_1111_0111, most significant bit -> index 0
    CHECK(bits[0] == 1);
    CHECK(bits[1] == 0);
    CHECK(bits[18] == 1);
    CHECK(format_assignment(name, bits) == "reg=0x5a3f7:19");

    auto [n2, b2] = parse_assignment("a=0b101:3");
    CHECK(b2 == std::vector<uint8_t>{1, 0, 1});

    CHECK_THROWS_AS(parse_assignment("a=5:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_assignment("a=0x5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_assignment("a=0xF:3"), std::invalid_argument); // does not fit
    CHECK_THROWS_AS(parse_assignment("=0x1:1"), std::invalid_argument);
}

TEST_CASE("interp: one LFSR shift by hand") {
    // Key 0x00001:19 sets only reg[18]; the first keystream bit is reg[0] = 0.
    TypedAst prog = analyze(testutil::lfsr_source(2));
    ValueMap out = interpret(prog, inputs_of("reg=0x00001:19"));
    const auto* stream = out.find("stream");
    REQUIRE(stream != nullptr);
    REQUIRE(stream->size() == 2);
    CHECK((*stream)[0] == 0);
    // After one shift the register moved down one cell; reg[0] is still 0.
    CHECK((*stream)[1] == 0);

    // A key with only reg[0] set emits that bit immediately.
    ValueMap out2 = interpret(prog, inputs_of("reg=0x40000:19"));
    CHECK((*out2.find("stream"))[0] == 1);
    // feedback = reg[0]^reg[1]^reg[2]^reg[5] = 1 on the first shift; it
    // reaches reg[0] only after 18 more shifts, so bit 1 is 0.
    CHECK((*out2.find("stream"))[1] == 0);
}

TEST_CASE("interp: all-zero key yields the all-zero keystream") {
    TypedAst prog = analyze(testutil::lfsr_source(64));
    ValueMap out = interpret(prog, inputs_of("reg=0x0:19"));
    for (uint8_t b : *out.find("stream")) CHECK(b == 0);
}

TEST_CASE("interp: identity program") {
    TypedAst prog = analyze("__in bit a; __out bit b;\nvoid main() { b = a; }");
    ValueMap out = interpret(prog, inputs_of("a=0b1:1"));
    CHECK((*out.find("b"))[0] == 1);
}

TEST_CASE("interp: width mismatch and missing inputs are errors") {
    TypedAst prog = analyze(testutil::lfsr_source(1));
    CHECK_THROWS_WITH_AS(interpret(prog, inputs_of("reg=0x1:18")),
                         doctest::Contains("expected 19"), CompileError);
    ValueMap empty;
    CHECK_THROWS_WITH_AS(interpret(prog, empty), doctest::Contains("no input value"),
                         CompileError);
}

TEST_CASE("interp: geffe combiner selects r1 when r2 emits 1") {
    // With r2 all ones, the selector bit is 1 on every step until feedback
    // mixes in, so the keystream starts as r1's output stream.
    TypedAst prog = analyze(testutil::corpus_source("geffe.bit"));
    ValueMap in;
    in.set("r1", {1, 0, 1, 0, 1, 0, 1, 0});
    in.set("r2", {1, 1, 1, 1, 1, 1, 1});
    in.set("r3", {0, 0, 0, 0, 0, 0, 0, 0, 0});
    ValueMap out = interpret(prog, in);
    const auto& stream = *out.find("stream");
    for (int i = 0; i < 7; ++i) CHECK(stream[static_cast<size_t>(i)] == (i % 2 == 0 ? 1 : 0));
}
