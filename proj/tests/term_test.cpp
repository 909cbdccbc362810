#include "support.hpp"

#include <cctype>

#include "termsep/errors.hpp"

using namespace termsep;
using termsep::testing::sig;
using termsep::testing::T;

namespace {

Path P(std::initializer_list<Step> steps) { return Path(std::vector<Step>(steps)); }

constexpr std::string_view kS2Text = "f(g(u,v),f(w,x,f(u,v,w)),c)";
const Term kS2 = T(kS2Text);

// Node count read off the text: one identifier per node.
std::size_t identifier_count(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (std::isalpha(static_cast<unsigned char>(text[i])) && (i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1])))) ++n;
  return n;
}

}  // namespace

TEST_SUITE("term") {
  TEST_CASE("signature parsing") {
    Signature s = parse_signature("# ops\nf/3\n g / 2 \n\nc/0  # constant\n");
    CHECK(s.arity("f") == 3u);
    CHECK(s.arity("g") == 2u);
    CHECK(s.arity("c") == 0u);
    CHECK_FALSE(s.arity("h"));
    CHECK(parse_signature_list("f/3, g/2,c/0") == s);
    CHECK(parse_signature(format_signature(s)) == s);

    CHECK_THROWS_AS(parse_signature("f/3\nf/2\n"), Error);
    CHECK_THROWS_AS(parse_signature("f\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("f/-1\n"), ParseError);
  }

  TEST_CASE("parse the two-level example term") {
    Term s = kS2;
    CHECK(s.symbol() == "f");
    CHECK(s.arity() == 3);
    CHECK(s.arg(1) == T("g(u,v)"));
    CHECK(s.arg(3).is_application());
    CHECK(s.arg(3).arity() == 0);
    CHECK(s.size() == identifier_count(kS2Text));
    CHECK(s.size() == 12);
    CHECK(s.depth() == 3);
    CHECK(format_term(s) == "f(g(u,v),f(w,x,f(u,v,w)),c)");
  }

  TEST_CASE("variables, constants and whitespace") {
    CHECK(T("x").is_variable());
    CHECK(T(" x ").symbol() == "x");
    CHECK(T("c").is_application());
    CHECK(T("c()") == T("c"));
    CHECK(T(" g ( x , y ) ") == T("g(x,y)"));
    CHECK(T("x'").is_variable());
  }

  TEST_CASE("parse errors carry positions") {
    auto error_at = [](std::string_view text) -> std::size_t {
      try {
        T(text);
      } catch (const ParseError& e) {
        return e.position();
      }
      FAIL("no error for " << text);
      return 0;
    };
    CHECK_THROWS_WITH_AS(T("f(x)"), doctest::Contains("arity"), ParseError);
    CHECK_THROWS_WITH_AS(T("q(x)"), doctest::Contains("unknown operation"), ParseError);
    CHECK_THROWS_AS(T("g(x,y"), ParseError);
    CHECK_THROWS_AS(T("g(x,y))"), ParseError);
    CHECK_THROWS_AS(T(""), ParseError);
    CHECK_THROWS_AS(T("g(x,,y)"), ParseError);
    CHECK(error_at("g(x,y)z") == 6);
    CHECK(error_at("g(x,$)") == 4);
  }

  TEST_CASE("subterm_at") {
    CHECK(subterm_at(kS2, P({{"f", 1}, {"g", 1}})) == T("u"));
    CHECK(subterm_at(kS2, Path{}) == kS2);
    CHECK(subterm_at(kS2, P({{"f", 2}, {"f", 3}})) == T("f(u,v,w)"));
    CHECK_THROWS_AS(subterm_at(kS2, P({{"g", 1}})), PathError);
    CHECK_THROWS_AS(subterm_at(kS2, P({{"f", 4}})), PathError);
    CHECK_THROWS_AS(subterm_at(T("x"), P({{"f", 1}})), PathError);
    CHECK_FALSE(try_subterm_at(kS2, P({{"f", 3}, {"c", 1}})));
  }

  TEST_CASE("occurrences in preorder") {
    auto x = occurrences(T("x"));
    REQUIRE(x.size() == 1);
    CHECK(x[0].path.empty());

    auto g = occurrences(T("g(x,x)"));
    REQUIRE(g.size() == 3);
    CHECK(g[0].subterm == T("g(x,x)"));
    CHECK(g[1].path == P({{"g", 1}}));
    CHECK(g[2].path == P({{"g", 2}}));
    CHECK(g[1].subterm == g[2].subterm);

    auto all = occurrences(kS2);
    CHECK(all.size() == identifier_count(kS2Text));
    for (const auto& occ : all) CHECK(subterm_at(kS2, occ.path) == occ.subterm);
  }

  TEST_CASE("find_subterm_paths") {
    auto xs = find_subterm_paths(T("x"), T("g(x,x)"));
    CHECK(xs == std::vector<Path>{P({{"g", 1}}), P({{"g", 2}})});
    CHECK(find_subterm_paths(kS2, kS2) == std::vector<Path>{Path{}});
    CHECK(find_subterm_paths(T("f(u,v,w)"), kS2) == std::vector<Path>{P({{"f", 2}, {"f", 3}})});
    CHECK(find_subterm_paths(T("y"), kS2).empty());
    CHECK(is_subterm(T("u"), kS2));
    CHECK(is_proper_subterm(T("u"), kS2));
    CHECK_FALSE(is_proper_subterm(kS2, kS2));
  }

  TEST_CASE("paths") {
    Path p = P({{"f", 2}});
    Path q = p / Step{"f", 3};
    CHECK(q == P({{"f", 2}, {"f", 3}}));
    CHECK(q.parent() == p);
    CHECK(format_path(q) == "f_2.f_3");
    CHECK(format_path(Path{}) == "Λ");
    // Concatenation: r at σ in q, q at ρ in t, so r at ρσ in t.
    Term inner = subterm_at(kS2, p);
    Path sigma = P({{"f", 3}, {"f", 1}});
    CHECK(subterm_at(kS2, p / sigma) == subterm_at(inner, sigma));
  }

  TEST_CASE("variables and occurs") {
    CHECK(variables(kS2) == std::vector<std::string>{"u", "v", "w", "x"});
    CHECK(occurs("w", kS2));
    CHECK_FALSE(occurs("y", kS2));
    CHECK(variables(T("c")).empty());
  }

  TEST_CASE("render_tree") {
    CHECK(render_tree(T("x")) == "x\n");
    CHECK(render_tree(T("g(x,y)")) == "g\n  x\n  y\n");
    std::string tree = render_tree(kS2);
    CHECK(std::count(tree.begin(), tree.end(), '\n') == static_cast<long>(kS2.size()));
  }

  TEST_CASE("term order is shortlex and total") {
    CHECK(T("x") < T("g(x,y)"));
    CHECK(T("x") < T("c"));
    CHECK(T("g(x,y)") < T("f(x,y,z)"));
    CHECK(T("g(x,y)") < T("g(x,z)"));
    CHECK((T("g(x,y)") <=> T("g(x,y)")) == 0);
    CHECK(T("g(x,y)").hash() == T("g(x,y)").hash());
  }
}
