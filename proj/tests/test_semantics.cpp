#include <doctest.h>

#include "bitblast/interp.hpp"
#include "bitblast/semantics.hpp"
#include "bitblast/symbex.hpp"
#include "helpers.hpp"

using namespace bitblast;

namespace {

Expr lit(uint64_t v) {
    Expr e;
    e.kind = ExprKind::IntLit;
    e.value = v;
    e.type = Type::Int;
    return e;
}

ExprPtr lit_p(uint64_t v) { return std::make_unique<Expr>(lit(v)); }

Expr binary(BinOp op, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.bin_op = op;
    e.a = std::move(a);
    e.b = std::move(b);
    e.type = Type::Int;
    return e;
}

int64_t ceval(const Expr& e) { return const_eval(e, ConstEnv{}, "test"); }

} // namespace

TEST_CASE("const_eval: arithmetic basics") {
    CHECK(ceval(binary(BinOp::Sub, lit_p(19), lit_p(1))) == 18);
    CHECK(ceval(binary(BinOp::Shl, lit_p(1), lit_p(4))) == 16);
    CHECK(ceval(binary(BinOp::Mul, lit_p(6), lit_p(7))) == 42);
    CHECK(ceval(binary(BinOp::Lt, lit_p(3), lit_p(4))) == 1);
}

TEST_CASE("const_eval: division and modulo by zero are errors") {
    CHECK_THROWS_WITH_AS(ceval(binary(BinOp::Mod, lit_p(7), lit_p(0))),
                         doctest::Contains("modulo by zero"), CompileError);
    CHECK_THROWS_WITH_AS(ceval(binary(BinOp::Div, lit_p(7), lit_p(0))),
                         doctest::Contains("division by zero"), CompileError);
}

TEST_CASE("const_eval: oversized shifts are errors, overflow wraps") {
    CHECK_THROWS_WITH_AS(ceval(binary(BinOp::Shl, lit_p(1), lit_p(64))),
                         doctest::Contains("shift amount"), CompileError);
    // 2^63 * 2 wraps to 0 in two's complement
    Expr big = binary(BinOp::Mul, lit_p(uint64_t(1) << 63), lit_p(2));
    CHECK(ceval(big) == 0);
    Expr neg = binary(BinOp::Sub, lit_p(0), lit_p(1));
    CHECK(ceval(neg) == -1);
    // INT64_MIN / -1 wraps instead of trapping
    Expr min_div = binary(BinOp::Div, lit_p(uint64_t(1) << 63),
                          std::make_unique<Expr>(binary(BinOp::Sub, lit_p(0), lit_p(1))));
    CHECK(ceval(min_div) == INT64_MIN);
    Expr min_mod = binary(BinOp::Mod, lit_p(uint64_t(1) << 63),
                          std::make_unique<Expr>(binary(BinOp::Sub, lit_p(0), lit_p(1))));
    CHECK(ceval(min_mod) == 0);
}

TEST_CASE("typecheck: corpus programs pass") {
    for (const char* name : {"lfsr.bit", "geffe.bit", "a51.bit"}) {
        CAPTURE(name);
        CHECK_NOTHROW(analyze(testutil::corpus_source(name), name));
    }
}

TEST_CASE("typecheck: loop bound evaluates statically") {
    TypedAst t = analyze("__in bit a; __out bit b;\n"
                         "void main() { int i; for (i = 0; i < 19; i = i + 1) b = b ^ a; }");
    SymbexStats stats;
    symbolic_translate(t, {}, &stats);
    REQUIRE(stats.loop_trip_counts.size() == 1);
    CHECK(*stats.loop_trip_counts.begin()->second.begin() == 19);
}

TEST_CASE("typecheck: bit to int conversion is forbidden") {
    CHECK_THROWS_WITH_AS(analyze("void main() { bit b; int i; b = 0; i = b; }"),
                         doctest::Contains("must be of type int"), CompileError);
}

TEST_CASE("typecheck: only literals 0/1 convert to bit") {
    CHECK_NOTHROW(analyze("void main() { bit b; b = 1; }"));
    CHECK_THROWS_AS(analyze("void main() { bit b; b = 2; }"), CompileError);
    CHECK_THROWS_AS(analyze("void main() { bit b; int i; i = 0; b = i; }"), CompileError);
}

TEST_CASE("typecheck: recursion is rejected with the cycle named") {
    const char* src = "bit f() { return g(); }\n"
                      "bit g() { return f(); }\n"
                      "void main() { bit x; x = f(); }";
    CHECK_THROWS_WITH_AS(analyze(src), doctest::Contains("recursion"), CompileError);
    try {
        analyze(src);
    } catch (const CompileError& e) {
        std::string msg = e.message();
        CHECK(msg.find("f") != std::string::npos);
        CHECK(msg.find("g") != std::string::npos);
    }
}

TEST_CASE("typecheck: bit-valued loop bound gets a dedicated diagnostic") {
    CHECK_THROWS_WITH_AS(
        analyze("__in bit a; void main() { int i; for (i = 0; a; i = i + 1) i = i; }"),
        doctest::Contains("loop bound depends on bit data"), CompileError);
}

TEST_CASE("typecheck: void misuse, array misuse, attribute misuse") {
    CHECK_THROWS_AS(analyze("void v; void main() {}"), CompileError);
    CHECK_THROWS_AS(analyze("void main() { bit a[3]; a = 1; }"), CompileError);
    CHECK_THROWS_AS(analyze("void main() { bit a; a[0] = 1; }"), CompileError);
    CHECK_THROWS_AS(analyze("__in int k; void main() {}"), CompileError);
    CHECK_THROWS_AS(analyze("__in bit a = 1; void main() {}"), CompileError);
    CHECK_THROWS_AS(analyze("bit a[0]; void main() {}"), CompileError);
}

TEST_CASE("typecheck: constant array index out of declared bounds") {
    CHECK_THROWS_WITH_AS(analyze("bit a[4]; void main() { a[4] = 1; }"),
                         doctest::Contains("out of bounds"), CompileError);
    CHECK_NOTHROW(analyze("bit a[4]; void main() { a[3] = 1; }"));
}

TEST_CASE("typecheck: return shape") {
    CHECK_THROWS_AS(analyze("bit f() { bit a; a = 1; }\nvoid main() { bit x; x = f(); }"),
                    CompileError); // missing return
    CHECK_THROWS_AS(
        analyze("bit f() { return 1; return 0; }\nvoid main() { bit x; x = f(); }"),
        CompileError); // multiple returns
    CHECK_THROWS_AS(
        analyze("bit f(bit c) { if (c) return 1; return 0; }\nvoid main() { bit x; x = f(1); }"),
        CompileError); // return inside a branch
    CHECK_THROWS_AS(analyze("void f() { return 1; }\nvoid main() { f(); }"), CompileError);
    CHECK_NOTHROW(analyze("void f() { return; }\nvoid main() { f(); }"));
}

TEST_CASE("typecheck: main signature") {
    CHECK_THROWS_AS(analyze("bit main() { return 1; }"), CompileError);
    CHECK_THROWS_AS(analyze("void main(bit x) {}"), CompileError);
}

TEST_CASE("typecheck: arithmetic on bits is rejected") {
    CHECK_THROWS_WITH_AS(analyze("bit a, b; void main() { a = a + b; }"),
                         doctest::Contains("requires int operands"), CompileError);
    CHECK_THROWS_AS(analyze("bit a; void main() { a += 1; }"), CompileError);
}

TEST_CASE("typecheck: deterministic first error") {
    const char* src = "void main() { bit b; b = 2; b = 3; }";
    std::string first, second;
    try { analyze(src); } catch (const CompileError& e) { first = e.what(); }
    try { analyze(src); } catch (const CompileError& e) { second = e.what(); }
    CHECK(!first.empty());
    CHECK(first == second);
}

TEST_CASE("loop trip counts: symbolic unrolling matches the concrete interpreter") {
    for (const char* name : {"lfsr.bit", "geffe.bit", "a51.bit"}) {
        CAPTURE(name);
        TypedAst prog = analyze(testutil::corpus_source(name), name);
        SymbexStats sym_stats;
        symbolic_translate(prog, {}, &sym_stats);

        ValueMap inputs;
        for (const auto& g : prog.ast->globals) {
            if (g->attr != Attribute::In) continue;
            std::vector<uint8_t> bits(static_cast<size_t>(g->length));
            for (size_t i = 0; i < bits.size(); ++i) bits[i] = (i * 7 + 3) % 3 == 0;
            inputs.entries.emplace_back(g->name, std::move(bits));
        }
        InterpStats interp_stats;
        interpret(prog, inputs, &interp_stats);

        for (const auto& [stmt, counts] : interp_stats.loop_trip_counts) {
            REQUIRE(sym_stats.loop_trip_counts.count(stmt));
            CHECK(sym_stats.loop_trip_counts.at(stmt) == counts);
        }
    }
}
