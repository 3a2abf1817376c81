#include "eprime/arith.hpp"
#include "eprime/instance.hpp"
#include "eprime/parser.hpp"
#include "eprime/typecheck.hpp"
#include "generate.hpp"
#include "harness.hpp"
#include "reference.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace eprime;

namespace {

const std::string header = "language ESSENCE' 1.0\n";

Instance bind_model(const std::string& model, const std::optional<std::string>& params = std::nullopt)
{
    auto m = check_model(parse_model_text(header + model));
    std::optional<SourceModel> p;
    if (params)
        p = parse_param_text(header + *params);
    return bind_parameters(m, p ? &*p : nullptr);
}

ErrorKind bind_error(const std::string& model, const std::optional<std::string>& params = std::nullopt)
{
    try {
        (void)bind_model(model, params);
    }
    catch (const Error& e) {
        return e.kind();
    }
    FAIL("binding succeeded");
    return ErrorKind::Internal;
}

std::int64_t int_of(const std::string& text)
{
    auto v = oracle::ground(text);
    REQUIRE(v);
    return v->as_int();
}

} // namespace

TEST_CASE("floor division and modulo")
{
    CHECK(int_of("(-3)/2") == -2);
    CHECK(int_of("3/(-2)") == -2);
    CHECK(int_of("(-3)/(-2)") == 1);
    CHECK(int_of("3%2") == 1);
    CHECK(int_of("(-3)%2") == 1);
    CHECK(int_of("3%(-2)") == -1);
    CHECK(int_of("(-3)%(-2)") == -1);
    CHECK_FALSE(oracle::ground("1/0"));
    CHECK_FALSE(oracle::ground("0**0"));
    CHECK_FALSE(oracle::ground("2**(-1)"));
    CHECK(int_of("factorial(20)") == 2432902008176640000);
    CHECK_FALSE(oracle::ground("factorial(21)"));
}

TEST_CASE("undefinedness stops at the nearest boolean")
{
    CHECK(oracle::ground("factorial(-1)=1")->as_bool() == false);
    CHECK(oracle::ground("!(factorial(-1)=1)")->as_bool() == true);
    CHECK(oracle::ground("(1/0 = 1) = false")->as_bool() == true);
    CHECK(oracle::ground("[1,2][3] = 0")->as_bool() == false);
    CHECK_FALSE(oracle::ground("[1,2][3] + 1"));
    CHECK(oracle::ground("[true,true][3] = false")->as_bool() == true);
    CHECK_THROWS_AS(oracle::ground("9223372036854775807 + 1"), Error);
}

TEST_CASE("parameters bind in declaration order")
{
    auto inst = bind_model("given n : int(0..)\n", "letting n=7\n");
    CHECK(inst.values.at("n").as_int() == 7);
    CHECK(bind_error("given n : int(0..)\n", "letting n=7\nletting m=1\n") == ErrorKind::Instance);
    CHECK(bind_error("given n : int(0..)\n", "letting n=-1\n") == ErrorKind::Instance);
    CHECK(bind_error("given n : int(0..)\n", std::string()) == ErrorKind::Instance);

    std::ifstream in(std::string(EPRIME_TEST_DATA) + "/sudoku.eprime");
    std::stringstream model;
    model << in.rdbuf();
    std::ifstream pin(std::string(EPRIME_TEST_DATA) + "/sudoku_wiki.param");
    std::stringstream param;
    param << pin.rdbuf();
    auto m = check_model(parse_model_text(model.str()));
    auto p = parse_param_text(param.str());
    auto si = bind_parameters(m, &p);
    const auto& clues = si.values.at("clues").as_matrix();
    REQUIRE(clues.dims() == 2);
    CHECK(clues.index[0] == Domain::integer(IntDomain::interval(1, 9)));
    CHECK(clues.index[1] == Domain::integer(IntDomain::interval(1, 9)));
    CHECK(clues.elems.size() == 81);
}

TEST_CASE("where clauses")
{
    const std::string model = "given x : int(1..)\ngiven y : int(1..)\nwhere x < y\n";
    CHECK_NOTHROW(bind_model(model, "letting x = 1\nletting y = 2\n"));
    CHECK(bind_error(model, "letting x = 2\nletting y = 1\n") == ErrorKind::Where);
    CHECK(bind_error("where 1/0 = 1\n") == ErrorKind::Where);
    auto m = check_model(parse_model_text(header + "where 1/0 = 1\n"));
    auto inst = bind_declarations(m, nullptr);
    CHECK(check_where(m, inst).has_value());
}

TEST_CASE("letting domains")
{
    auto inst = bind_model("letting c = 10\nletting n = 3\nletting INDEX be domain int(1..c*n)\n"
                     "letting range be domain int(1..9)\nletting dom be domain int(1..5) union int(3..8)\n");
    CHECK(resolve_letting_domain("INDEX", inst) == Domain::integer(IntDomain::interval(1, 30)));
    CHECK(resolve_letting_domain("range", inst) == Domain::integer(IntDomain::interval(1, 9)));
    CHECK(resolve_letting_domain("dom", inst) == Domain::integer(IntDomain::interval(1, 8)));
    CHECK(bind_error("letting n = 1/0\n") == ErrorKind::Instance);
}

TEST_CASE("eval_ground agrees with the reference interpreter")
{
    oracle::ModelGenerator gen(41);
    int undefined = 0;
    for (int t = 0; t < 10000; ++t) {
        std::string text = gen.ground_int(5);
        auto raw = parse_expression_text(text);
        oracle::Reference ref;
        std::optional<oracle::RVal> want;
        bool want_overflow = false;
        try {
            want = ref.eval(*raw);
        }
        catch (const oracle::Overflow&) {
            want_overflow = true;
        }
        INFO(text);
        if (want_overflow) {
            CHECK_THROWS_AS(oracle::ground(text), Error);
            continue;
        }
        auto got = oracle::ground(text);
        REQUIRE(got.has_value() == want.has_value());
        if (got)
            REQUIRE(got->as_int() == want->as_int());
        else
            ++undefined;
    }
    CHECK(undefined > 100);
}

TEST_CASE("division identity")
{
    for (std::int64_t a = -50; a <= 50; ++a)
        for (std::int64_t b = -50; b <= 50; ++b) {
            if (b == 0)
                continue;
            auto q = arith::floor_div(a, b);
            auto r = arith::floor_mod(a, b);
            REQUIRE(a == b * q + r);
            REQUIRE(std::llabs(r) < std::llabs(b));
            REQUIRE((r == 0 || (r < 0) == (b < 0)));
        }
}

TEST_CASE("letting evaluation equals textual substitution")
{
    std::mt19937_64 rng(42);
    oracle::ModelGenerator gen(43);
    for (int t = 0; t < 500; ++t) {
        std::string model;
        std::vector<std::pair<std::string, std::string>> defs;
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int k = 0; k < n; ++k) {
            std::string body = gen.ground_int(2);
            // mention earlier lettings
            for (const auto& [name, _] : defs)
                if (std::uniform_int_distribution<int>(0, 1)(rng))
                    body = "(" + body + " + " + name + ")";
            std::string name = "v" + std::to_string(k);
            model += "letting " + name + " = " + body + "\n";
            std::string substituted = body;
            for (auto it = defs.rbegin(); it != defs.rend(); ++it)
                substituted = std::regex_replace(substituted, std::regex("\\b" + it->first + "\\b"), "(" + it->second + ")");
            defs.emplace_back(name, substituted);
        }
        INFO(model);
        std::optional<Instance> inst;
        try {
            inst = bind_model(model);
        }
        catch (const Error&) {
        }
        std::vector<std::optional<Value>> want;
        for (const auto& [name, text] : defs) {
            try {
                want.push_back(oracle::ground(text));
            }
            catch (const Error&) {
                want.emplace_back();
            }
        }
        bool all_defined = std::all_of(want.begin(), want.end(), [](const auto& v) { return v.has_value(); });
        if (all_defined) {
            REQUIRE(inst);
            for (std::size_t k = 0; k < defs.size(); ++k)
                CHECK(inst->values.at(defs[k].first) == *want[k]);
        }
        else
            CHECK_FALSE(inst);
    }
}
