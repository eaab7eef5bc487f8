#include <doctest.h>

#include <random>

#include "folim/eval.hpp"
#include "folim/formula.hpp"
#include "folim/parser.hpp"
#include "helpers.hpp"

using namespace folim;
using namespace folim::testing;

namespace {
const Signature kGraphSig = Signature::graph();
}

TEST_CASE("parse: equality atom") {
    Formula f = parseFormula("x1 = x1", kGraphSig);
    CHECK(f.node()->kind == NodeKind::Eq);
    CHECK(f.qrank() == 0);
    CHECK(f.freeVars() == std::set<int>{1});
}

TEST_CASE("parse: quantified adjacency") {
    Formula f = parseFormula("exists x2. adj(x1,x2)", kGraphSig);
    CHECK(f.node()->kind == NodeKind::Exists);
    CHECK(f.node()->qvar == 2);
    CHECK(f.node()->left->kind == NodeKind::Atom);
    CHECK(f.qrank() == 1);
    CHECK(f.freeVars() == std::set<int>{1});
}

TEST_CASE("parse: HOM fragment formula of P_3") {
    Formula f = parseFormula("adj(x1,x2) & adj(x2,x3)", kGraphSig);
    CHECK(f.isHom());
    CHECK(classifyFragment(f) == FragmentTag::HOM);
    Formula canonical = canonicalHomFormula(pathGraph(3));
    CHECK(f.equals(canonical));
}

TEST_CASE("parse errors carry position and reason") {
    CHECK_THROWS_AS(parseFormula("adj(x1,x2", kGraphSig), ParseError);
    CHECK_THROWS_AS(parseFormula("edge(x1,x2)", kGraphSig), ParseError);   // unknown relation
    CHECK_THROWS_AS(parseFormula("adj(x1)", kGraphSig), ParseError);       // arity
    CHECK_THROWS_AS(parseFormula("x1 &", kGraphSig), ParseError);
    try {
        parseFormula("adj(x1,\nx2) | foo(x1)", kGraphSig);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("2:") != std::string::npos); // second line
    }
}

TEST_CASE("precedence: ! > & > | > -> > <->") {
    Formula f = parseFormula("!adj(x1,x2) & x1=x2 | x1!=x2 -> true <-> false", kGraphSig);
    CHECK(f.node()->kind == NodeKind::Iff);
    CHECK(f.node()->left->kind == NodeKind::Implies);
    CHECK(f.node()->left->left->kind == NodeKind::Or);
    CHECK(f.node()->left->left->left->kind == NodeKind::And);
    CHECK(f.node()->left->left->left->left->kind == NodeKind::Not);
}

TEST_CASE("quantifier body extends maximally right") {
    Formula f = parseFormula("exists x1. x1=x1 & adj(x1,x2)", kGraphSig);
    CHECK(f.node()->kind == NodeKind::Exists);
    CHECK(f.node()->left->kind == NodeKind::And);
}

TEST_CASE("qrank laws") {
    Formula a = parseFormula("adj(x1,x2)", kGraphSig);
    Formula q = Formula::exists(2, a);
    CHECK((!q).qrank() == q.qrank());
    CHECK((q && a).qrank() == std::max(q.qrank(), a.qrank()));
    CHECK(Formula::exists(1, q).qrank() == 1 + q.qrank());
}

namespace {

Formula randomFormula(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> var(1, 3);
    if (depth == 0) {
        switch (rng() % 4) {
        case 0: return Formula::atom("adj", {var(rng), var(rng)});
        case 1: return Formula::eq(var(rng), var(rng));
        case 2: return Formula::top();
        default: return Formula::bottom();
        }
    }
    Formula a = randomFormula(rng, depth - 1);
    Formula b = randomFormula(rng, depth - 1);
    switch (rng() % 7) {
    case 0: return !a;
    case 1: return a && b;
    case 2: return a || b;
    case 3: return a.implies(b);
    case 4: return a.iff(b);
    case 5: return Formula::exists(var(rng), a);
    default: return Formula::forall(var(rng), a);
    }
}

} // namespace

TEST_CASE("print/parse round trip on random formulas") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 200; ++iter) {
        Formula f = randomFormula(rng, 4);
        Formula g = parseFormula(f.str(), kGraphSig);
        CHECK(f.equals(g));
    }
}

TEST_CASE("canonical HOM formula: K_2") {
    Formula f = canonicalHomFormula(completeGraph(2));
    CHECK(f.str() == "adj(x1,x2)");
}

TEST_CASE("canonical HOM formula: C_5 has five atoms") {
    Formula f = canonicalHomFormula(cycleGraph(5));
    CHECK(f.isHom());
    CHECK(f.qrank() == 0);
    int atoms = 0;
    std::vector<const FormulaNode*> stack{f.node().get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (n->kind == NodeKind::Atom) ++atoms;
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    CHECK(atoms == 5);
}

TEST_CASE("canonical HOM formula: edgeless graph gives true, density 1") {
    Formula f = canonicalHomFormula(emptyGraph(3));
    CHECK(f.node()->kind == NodeKind::True);
    // <phi_F, G> = 1 for the empty pattern: every map preserves no edge.
    CHECK(stonePairing(completeGraph(4), f, 3) == Rational(1));
}

TEST_CASE("canonical HOM formula free variables and rank") {
    Formula f = canonicalHomFormula(pathGraph(4));
    CHECK(f.freeVars() == std::set<int>{1, 2, 3, 4});
    CHECK(f.qrank() == 0);
}

TEST_CASE("extension sentence: qrank 2k+1, sentence") {
    Formula u1 = extensionSentence(1);
    CHECK(u1.qrank() == 3);
    CHECK(u1.isSentence());
    CHECK(extensionSentence(2).qrank() == 5);
}

TEST_CASE("extension property: K_3 fails, C_5 satisfies") {
    Formula u1 = extensionSentence(1);
    CHECK(stonePairing(completeGraph(3), u1, 0) == Rational(0));
    CHECK(stonePairing(cycleGraph(5), u1, 0) == Rational(1));
}

TEST_CASE("fragment tags") {
    CHECK(classifyFragment(parseFormula("adj(x1,x2) & adj(x2,x3)", kGraphSig)) ==
          FragmentTag::HOM);
    CHECK(classifyFragment(parseFormula("!adj(x1,x2)", kGraphSig)) == FragmentTag::QF);
    CHECK(classifyFragment(parseFormula("exists x1. exists x2. adj(x1,x2)", kGraphSig)) ==
          FragmentTag::Sentence);
    CHECK(classifyFragment(parseFormula("exists x2. adj(x1,x2)", kGraphSig)) ==
          FragmentTag::FOp);
}

TEST_CASE("substitute avoids variable capture") {
    // phi = exists x2. adj(x1, x2); substituting x1 -> x2 must not capture.
    Formula phi = parseFormula("exists x2. adj(x1,x2)", kGraphSig);
    Formula sub = phi.substitute({{1, 2}}, 10);
    // On K_2 with x2 = 0: should hold (some neighbor exists).
    CHECK(satisfies(completeGraph(2), sub, {0, 0}));
    // On 2K_1: no neighbor, must be false; capture would make it true via x2=x2.
    CHECK_FALSE(satisfies(emptyGraph(2), sub, {0, 0}));
}
