#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/io.hpp"

using namespace cocyclelab;
namespace io = cocyclelab::io;

namespace {

int run(const std::string& args, const std::string& out_file = "") {
    std::string cmd = std::string(CLI_PATH) + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
    else cmd += " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data(const char* name) { return std::string(DATA_DIR) + "/" + name; }

std::string tmp(const char* name) { return std::string("/tmp/cocyclelab_test_") + name; }

} // namespace

TEST_CASE("rationals and integers serialize as decimal strings") {
    CHECK(io::rat_to_json(Rat(-3, 4)) == io::json("-3/4"));
    CHECK(io::rat_from_json(io::json("22/7")) == Rat(22, 7));
    CHECK(io::rat_from_json(io::json("-5")) == Rat(-5));
    CHECK_THROWS_AS(io::rat_from_json(io::json("x")), ParseError);
    CHECK_THROWS_AS(io::rat_from_json(io::json(5)), ParseError);
    CHECK(io::big_to_json(BigInt("123456789012345678901234567890")).get<std::string>() ==
          "123456789012345678901234567890");
    CHECK(io::big_from_json(io::json("-42")) == BigInt(-42));
}

TEST_CASE("group documents round-trip byte for byte") {
    GroupPtr s3 = make_s3();
    io::json j = io::group_to_json(*s3);
    GroupPtr back = io::group_from_json(j);
    CHECK(back->order() == 6);
    CHECK(back->table() == s3->table());
    CHECK(io::dumps(io::group_to_json(*back)) == io::dumps(j));
    io::json broken = j;
    broken.erase("mul");
    CHECK_THROWS_AS(io::group_from_json(broken), ParseError);
}

TEST_CASE("module documents round-trip") {
    GroupPtr z2 = make_cyclic(2);
    std::vector<ModulePtr> mods = {
        GModule::trivial(z2, CoefficientGroup::finite_abelian({2, 4})),
        GModule::trivial(z2, CoefficientGroup::free_abelian(2)),
        GModule::trivial(z2, CoefficientGroup::rational_torus(1)),
        GModule::with_matrices(z2, CoefficientGroup::finite_abelian({3}),
                               {{Rat(1)}, {Rat(-1)}}),
        GModule::induced_of(GModule::trivial(z2, CoefficientGroup::finite_abelian({2}))),
    };
    for (const ModulePtr& m : mods) {
        io::json j = io::module_to_json(*m);
        ModulePtr back = io::module_from_json(j);
        CHECK(back->coeffs()->kind() == m->coeffs()->kind());
        CHECK(back->coeffs()->dim() == m->coeffs()->dim());
        CHECK(back->isometric() == m->isometric());
        CHECK(io::dumps(io::module_to_json(*back)) == io::dumps(j));
    }
    // a module without an embedded group needs one supplied
    io::json no_group = io::module_to_json(*mods[0], false);
    CHECK_THROWS_AS(io::module_from_json(no_group), ParseError);
    CHECK(io::module_from_json(no_group, z2)->coeffs()->count() == 8);
}

TEST_CASE("cochain documents round-trip") {
    ModulePtr m = GModule::trivial(make_cyclic(3), CoefficientGroup::finite_abelian({5}));
    Cochain c(m, 2, {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(0), Rat(1), Rat(2), Rat(3)});
    io::json j = io::cochain_to_json(c);
    Cochain back = io::cochain_from_json(j);
    CHECK(back.degree() == 2);
    CHECK(back.flat() == c.flat());
    CHECK(io::dumps(io::cochain_to_json(back)) == io::dumps(j));
}

TEST_CASE("tower and hom documents round-trip") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4);
    GroupHom pi(z4, z2, {0, 1, 0, 1});
    io::json hj = io::hom_to_json(pi);
    GroupHom hback = io::hom_from_json(hj);
    CHECK(hback.map() == pi.map());

    Tower t({z2, z4}, {pi});
    io::json tj = io::tower_to_json(t);
    Tower tback = io::tower_from_json(tj);
    CHECK(tback.size() == 2);
    CHECK(io::dumps(io::tower_to_json(tback)) == io::dumps(tj));
    io::json bad = tj;
    bad["steps"] = io::json::array();
    CHECK_THROWS_AS(io::tower_from_json(bad), ParseError);
}

TEST_CASE("ses and direct-system documents parse") {
    io::json ses = io::load_file(data("ses_z2_m2.json"));
    ModuleSES s = io::ses_from_json(ses);
    CHECK(s.family == "ZxmZ_Zm");
    CHECK(s.multiplier == 2);
    CHECK(les_check(s, 1).all_exact);

    // explicit family with a shared group
    GroupPtr z2 = make_cyclic(2);
    io::json ex;
    ex["family"] = "explicit";
    ex["group"] = io::group_to_json(*z2);
    io::json m2 = io::module_to_json(
        *GModule::trivial(z2, CoefficientGroup::finite_abelian({2})), false);
    io::json m4 = io::module_to_json(
        *GModule::trivial(z2, CoefficientGroup::finite_abelian({4})), false);
    ex["a"] = m2;
    ex["b"] = m4;
    ex["c"] = m2;
    ex["i"] = io::json::array({"2"});
    ex["j"] = io::json::array({"1"});
    ModuleSES se = io::ses_from_json(ex);
    CHECK(se.family == "explicit");
    CHECK(les_check(se, 1).all_exact);

    DirectSystem d = io::dirsys_from_json(io::load_file(data("dirsys_z2.json")));
    CHECK(d.stages.size() == 3);
    CHECK(d.ambient != nullptr);
}

TEST_CASE("dumps is canonical and digest is stable") {
    io::json j;
    j["b"] = "1";
    j["a"] = "2";
    std::string s = io::dumps(j);
    CHECK(s == "{\n  \"b\": \"1\",\n  \"a\": \"2\"\n}\n"); // insertion order kept
    CHECK(io::digest("") == "cbf29ce484222325");
    CHECK(io::digest(s) == io::digest(s));
    CHECK(io::digest(s) != io::digest(s + " "));
}

TEST_CASE("cli: compute produces identical reports for 1 and 8 threads") {
    std::string a = tmp("t1.json"), b = tmp("t8.json");
    REQUIRE(run("compute --group " + data("z2.json") + " --module " + data("z2triv.json") +
                    " --degree 2 --threads 1",
                a) == 0);
    REQUIRE(run("compute --group " + data("z2.json") + " --module " + data("z2triv.json") +
                    " --degree 2 --threads 8",
                b) == 0);
    std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(sa == sb);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("cli: verify distinguishes cocycles from non-cocycles") {
    CHECK(run("verify --cochain " + data("carry.json")) == 0);
    // build a non-cocycle by editing the carry document
    io::json doc = io::load_file(data("carry.json"));
    doc["values"] = io::json::array({"0", "1", "0", "0"});
    std::string bad = tmp("bad_cochain.json");
    io::save_file(bad, doc);
    CHECK(run("verify --cochain " + bad) == 3);
    std::remove(bad.c_str());
}

TEST_CASE("cli: exit codes for input and capacity errors") {
    CHECK(run("compute --group /nonexistent.json --module " + data("z2triv.json") +
              " --degree 1") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("compute --group " + data("z2.json") + " --module " + data("z2triv.json") +
              " --degree 2 --max-entries 2") == 2);
    // the environment variable is honoured too
    std::string cmd = std::string("COCYCLELAB_MAX_ENTRIES=2 ") + CLI_PATH + " compute --group " +
                      data("z2.json") + " --module " + data("z2triv.json") +
                      " --degree 2 >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("cli: selftest passes") {
    CHECK(run("selftest") == 0);
}

TEST_CASE("cli: d and verify compose") {
    std::string out = tmp("dzero.json");
    REQUIRE(run("d --cochain " + data("zero.json") + " --out " + out) == 0);
    io::json j = io::load_file(out);
    Cochain c = io::cochain_from_json(j);
    CHECK(c.degree() == 2);
    CHECK(c.is_zero());
    CHECK(run("verify --cochain " + out) == 0);
    std::remove(out.c_str());
}
