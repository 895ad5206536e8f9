#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "felab/parser.hpp"
#include "helpers.hpp"

using namespace felab;
using namespace felab::testing;

namespace {

// Random AST of bounded depth for round-trip checks.
AstPtr random_ast(std::mt19937_64& rng, int depth) {
    auto node = std::make_shared<Ast>();
    u64 pick = depth <= 0 ? rng() % 7 : rng() % 9;
    switch (pick) {
        case 0:
            node->kind = Ast::Kind::Literal;
            for (u64 i = 0, n = 1 + rng() % 4; i < n; ++i) node->nats.push_back(rng() % 50);
            std::sort(node->nats.begin(), node->nats.end());
            node->nats.erase(std::unique(node->nats.begin(), node->nats.end()), node->nats.end());
            break;
        case 1:
            node->kind = Ast::Kind::Ap;
            node->nats = {rng() % 10, rng() % 10};
            break;
        case 2: {
            node->kind = Ast::Kind::Per;
            for (u64 i = 0, n = rng() % 4; i < n; ++i) node->transient += (rng() & 1) ? '1' : '0';
            for (u64 i = 0, n = 1 + rng() % 5; i < n; ++i) node->mask += (rng() & 1) ? '1' : '0';
            break;
        }
        case 3:
            node->kind = Ast::Kind::Interval;
            node->nats = {rng() % 20, rng() % 40};
            break;
        case 4:
            node->kind = Ast::Kind::Naturals;
            break;
        case 5:
            node->kind = Ast::Kind::Empty;
            break;
        case 6: {
            node->kind = Ast::Kind::Named;
            const char* names[] = {"pow2", "qset", "squares"};
            node->name = names[rng() % 3];
            break;
        }
        case 7:
            node->kind = Ast::Kind::Shift;
            node->op = (rng() & 1) ? '>' : '<';
            node->amount = rng() % 16;
            node->children = {random_ast(rng, depth - 1)};
            break;
        default: {
            node->kind = Ast::Kind::Binop;
            const char ops[] = {'|', '&', '\\'};
            node->op = ops[rng() % 3];
            node->children = {random_ast(rng, depth - 1), random_ast(rng, depth - 1)};
            break;
        }
    }
    return node;
}

}  // namespace

TEST_CASE("parsing basic atoms") {
    CHECK(parse_expr("ap(0,2)") == evens());
    CHECK(parse_expr("{0,2,5}") == NatSet::finite({0, 2, 5}));
    CHECK(parse_expr("per(;10)") == evens());
    CHECK(parse_expr("per(1;01)") == evens());  // {0} u {2,4,...} renormalizes
    CHECK(parse_expr("interval(2,5)") == NatSet::finite({2, 3, 4}));
    CHECK(parse_expr("N") == NatSet::naturals());
    CHECK(parse_expr("empty") == NatSet::empty());
}

TEST_CASE("parsing shifts and operators") {
    CHECK(parse_expr("ap(0,2)>>1") == odds());
    CHECK(parse_expr("ap(0,2) << 2") == evens());
}

TEST_CASE("mixed-operator expression from the grammar") {
    // (ap(1,3) & ap(0,2)) | {5} = {4,10,16,...} u {5}
    NatSet s = parse_expr("(ap(1,3) & ap(0,2)) | {5}");
    for (u64 x = 0; x < 64; ++x)
        CHECK(s.contains(x) == ((x % 3 == 1 && x % 2 == 0) || x == 5));
}

TEST_CASE("named corpus entries") {
    NatSet q = parse_expr("qset");
    CHECK(q.tier() == NatSet::Tier::Generator);
    CHECK(q.contains(9));
    CHECK(parse_expr("pow2").contains(1024));
    CHECK(parse_expr("squares").contains(49));
    CHECK_FALSE(parse_expr("squares").contains(50));
}

TEST_CASE("syntax errors carry position and expectation") {
    CHECK_THROWS_AS(parse_expr("ap(0,2) &"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("{1,}"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("nosuchset"), EvalError);
    try {
        parse_expr("ap(0 2)");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 5);
        CHECK(e.expected == "','");
    }
}

TEST_CASE("mixing operators without parentheses is rejected") {
    CHECK_THROWS_AS(parse_expr("ap(0,2) & ap(0,3) | {5}"), SyntaxError);
    CHECK_NOTHROW(parse_expr("ap(0,2) & ap(0,3) & {6}"));
    CHECK_NOTHROW(parse_expr("(ap(0,2) & ap(0,3)) | {5}"));
}

TEST_CASE("print/parse round trip on random ASTs") {
    std::mt19937_64 rng(90);
    for (int i = 0; i < 200; ++i) {
        AstPtr a = random_ast(rng, 6);
        std::string printed = print_ast(a);
        AstPtr reparsed;
        REQUIRE_NOTHROW(reparsed = parse_ast(printed));
        // parse . print . parse == parse
        CHECK(ast_equal(reparsed, parse_ast(print_ast(reparsed))));
        CHECK(print_ast(reparsed) == printed);
    }
}

TEST_CASE("corpus file loading") {
    Corpus c;
    c.load("# comment\nmyset = ap(0,2) & ap(0,3)\nother = myset >> 1\n");
    const NatSet* s = c.lookup("myset");
    REQUIRE(s != nullptr);
    CHECK(*s == mult(6));
    REQUIRE(c.lookup("other") != nullptr);
    CHECK(*c.lookup("other") == NatSet::arithmetic(1, 6));
}
