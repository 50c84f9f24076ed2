#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/config.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/extensions.hpp"
#include "cocyclelab/io.hpp"
#include "cocyclelab/limits.hpp"
#include "cocyclelab/regularize.hpp"
#include "cocyclelab/ses.hpp"

using namespace cocyclelab;
using io::json;

namespace {

std::string g_format = "json";

void print_report(const json& rep) {
    if (g_format == "table")
        std::cout << io::to_table(rep);
    else
        std::cout << io::dumps(rep);
}

void emit_document(const json& doc, const std::string& out_path) {
    if (out_path.empty())
        std::cout << io::dumps(doc);
    else
        io::save_file(out_path, doc);
}

ModulePtr load_module(const std::string& module_path, const std::string& group_path) {
    GroupPtr group;
    if (!group_path.empty()) group = io::group_from_json(io::load_file(group_path));
    return io::module_from_json(io::load_file(module_path), std::move(group));
}

std::vector<int> int_array(const json& j) {
    std::vector<int> out;
    for (const auto& e : j) {
        Rat r = io::rat_from_json(e);
        if (!r.is_integer()) throw ParseError("expected an integer");
        out.push_back((int)r.num());
    }
    return out;
}

json rats_to_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(r.str());
    return a;
}

json intmat_to_json(const IntMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------- selftest

Cochain random_cochain(const ModulePtr& m, int degree, std::mt19937& rng) {
    const CoefficientGroup& A = *m->coeffs();
    Cochain c(m, degree);
    for (std::size_t cell = 0; cell < c.table_size(); ++cell) {
        if (A.finite()) {
            c.set(cell, A.element((long long)(rng() % (unsigned long long)A.count())));
        } else if (A.kind() == CoeffKind::FreeAbelian) {
            Value v = A.zero();
            for (auto& x : v) x = Rat((long long)(rng() % 7) - 3);
            c.set(cell, v);
        } else {
            Value v = A.zero();
            for (auto& x : v) x = Rat((long long)(rng() % 7) - 3, (long long)(rng() % 3) + 1);
            c.set(cell, v);
        }
    }
    return c;
}

int run_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "ok - " : "FAIL - ") << name << "\n";
        if (!ok) ++failures;
    };
    std::mt19937 rng(20260801);

    GroupPtr z2 = make_cyclic(2), z3 = make_cyclic(3);
    std::vector<ModulePtr> mods = {
        GModule::trivial(z2, CoefficientGroup::finite_abelian({2})),
        GModule::trivial(z3, CoefficientGroup::finite_abelian({4})),
        GModule::trivial(z2, CoefficientGroup::free_abelian(1)),
        GModule::trivial(z3, CoefficientGroup::rational_vector(1)),
        GModule::trivial(z2, CoefficientGroup::rational_torus(1)),
    };
    bool dd = true;
    for (const ModulePtr& m : mods)
        for (int p = 0; p <= 2; ++p)
            for (int t = 0; t < 5; ++t)
                dd = dd && coboundary(coboundary(random_cochain(m, p, rng))).is_zero();
    check(dd, "d after d is zero on random cochains");

    ModulePtr z2z2 = mods[0];
    Cochain carry(z2z2, 2);
    carry.set(3, Value{Rat(1)}); // carry at (1,1)
    check(is_cocycle(carry), "the carry table is a 2-cocycle");
    CohomologyGroup h2 = cohomology(z2z2, 2);
    check(h2.order() == 2, "H^2 over Z/2 with Z/2 coefficients has order 2");
    check(!is_coboundary(h2, carry).has_value(), "the carry class is nonzero");

    bool oracle_ok = true;
    for (int p = 1; p <= 2; ++p) {
        CohomologyGroup h = cohomology(z2z2, p);
        BruteForceResult bf = brute_force_cohomology(z2z2, p, BigInt(1000000));
        oracle_ok = oracle_ok && h.order() == bf.order;
    }
    check(oracle_ok, "brute force agrees on Z/2 with Z/2 coefficients");

    Cochain q = dimension_shift_Q(carry);
    ModulePtr ind = q.module();
    check(coboundary(q) == embed_as_constants(carry, ind),
          "d(Q psi) embeds psi as constants");

    ExtensionPresentation ep = extension_from_cocycle(carry);
    bool cyclic4 = false;
    for (int e = 0; e < ep.extension->order(); ++e)
        cyclic4 = cyclic4 || ep.extension->element_order(e) == 4;
    check(ep.extension->order() == 4 && cyclic4, "the carry extension is cyclic of order 4");

    check(crossed_hom_bound_check(mods[0]).pass && crossed_hom_bound_check(mods[1]).pass,
          "crossed-homomorphism bound holds on small modules");

    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("COCYCLELAB_MAX_ENTRIES")) {
        try {
            set_max_table_entries((std::size_t)std::stoull(env));
        } catch (const std::exception&) {
            std::cerr << "invalid COCYCLELAB_MAX_ENTRIES\n";
            return 1;
        }
    }

    CLI::App app{"exact-arithmetic laboratory for finite-group cohomology"};
    app.require_subcommand(1);
    std::size_t max_entries = 0;
    int threads = 0;
    app.add_option("--max-entries", max_entries, "dense table capacity limit");
    app.add_option("--threads", threads, "worker threads (never affects results)");
    app.add_option("--format", g_format, "report format")
        ->check(CLI::IsMember({"json", "table"}));

    std::string group_path, module_path, cochain_path, out_path, other_path;
    std::string tower_path, system_path, ses_path, projection_path, extension_path;
    std::string threshold, limit = "100000000000";
    int degree = 0;
    long long scale = 1;
    bool with_generators = false, diagnostic = false;
    int rc = 0;

    auto apply_config = [&] {
        if (max_entries > 0) set_max_table_entries(max_entries);
        if (threads > 0) set_thread_count(threads);
    };

    auto add_module_opts = [&](CLI::App* sub, bool need_degree = true) {
        sub->add_option("--group", group_path, "group JSON file");
        sub->add_option("--module", module_path, "module JSON file")->required();
        if (need_degree) sub->add_option("--degree", degree, "cohomological degree")->required();
    };

    // compute
    auto* compute = app.add_subcommand("compute", "cohomology group with generators");
    add_module_opts(compute);
    compute->add_option("--torus-scale", scale, "denominator scale for degree-0 torus");
    compute->add_flag("--generators", with_generators, "include generator tables");
    compute->callback([&] {
        apply_config();
        ModulePtr m = load_module(module_path, group_path);
        CohomologyGroup h = cohomology(m, degree, scale);
        json rep = io::report_header("compute", {{"module", module_path}});
        rep["cohomology"] = io::cohomology_to_json(h, with_generators);
        print_report(rep);
    });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force cohomology");
    add_module_opts(oracle);
    oracle->add_option("--limit", limit, "nominal enumeration bound");
    oracle->callback([&] {
        apply_config();
        ModulePtr m = load_module(module_path, group_path);
        BruteForceResult bf = brute_force_cohomology(m, degree, BigInt(limit));
        json rep = io::report_header("oracle", {{"module", module_path}});
        json b = json::object();
        b["z_count"] = bf.z_count.str();
        b["b_count"] = bf.b_count.str();
        b["order"] = bf.order.str();
        json f = json::array();
        for (const BigInt& d : bf.invariant_factors) f.push_back(d.str());
        b["invariant_factors"] = f;
        rep["brute_force"] = b;
        print_report(rep);
    });

    // verify
    auto* verify = app.add_subcommand("verify", "cocycle/coboundary test with witness");
    verify->add_option("--cochain", cochain_path)->required();
    verify->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        json rep = io::report_header("verify", {{"cochain", cochain_path}});
        bool zp = is_cocycle(c);
        rep["cocycle"] = zp;
        if (zp) {
            CohomologyGroup h = cohomology(c.module(), c.degree());
            auto wit = is_coboundary(h, c);
            rep["coboundary"] = wit.has_value();
            if (wit)
                rep["witness"] = rats_to_json(wit->flat());
            else
                rep["class"] = rats_to_json(class_of(h, c));
        } else {
            rep["coboundary"] = false;
        }
        print_report(rep);
        if (!zp) rc = 3;
    });

    auto add_cochain_out = [&](CLI::App* sub) {
        sub->add_option("--cochain", cochain_path)->required();
        sub->add_option("--out", out_path, "write the result here instead of stdout");
    };

    // d / shift / average
    auto* dcmd = app.add_subcommand("d", "coboundary of a cochain");
    add_cochain_out(dcmd);
    dcmd->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        emit_document(io::cochain_to_json(coboundary(c)), out_path);
    });

    auto* shift = app.add_subcommand("shift", "dimension-shifting operator Q");
    add_cochain_out(shift);
    shift->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        emit_document(io::cochain_to_json(dimension_shift_Q(c)), out_path);
    });

    auto* average = app.add_subcommand("average", "averaging contraction kappa");
    add_cochain_out(average);
    average->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        emit_document(io::cochain_to_json(average_kappa(c)), out_path);
    });

    // regularize
    auto* reg = app.add_subcommand("regularize", "decompose psi = phi + d(lambda)");
    reg->add_option("--cochain", cochain_path)->required();
    reg->add_option("--threshold", threshold, "override the smallness gate");
    std::string phi_out, lambda_out;
    reg->add_option("--phi-out", phi_out);
    reg->add_option("--lambda-out", lambda_out);
    reg->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        std::optional<Rat> thr;
        if (!threshold.empty()) thr = Rat::parse(threshold);
        RegularizationResult res = regularize(c, thr);
        json rep = io::report_header("regularize", {{"cochain", cochain_path}});
        rep["rho0_input"] = rho0(c).str();
        rep["threshold_used"] = res.threshold_used.str();
        rep["bounds_guaranteed"] = res.bounds_guaranteed;
        rep["phi_is_zero"] = res.phi.is_zero();
        json levels = json::array();
        for (const RegularizationLevel& lev : res.levels) {
            json l = json::object();
            l["degree"] = std::to_string(lev.degree);
            l["rho0_input"] = lev.rho0_input.str();
            l["sqrt_small"] = lev.sqrt_small;
            l["rho0_lambda"] = lev.rho0_lambda.str();
            l["rhoinf_phi"] = lev.rhoinf_phi.str();
            levels.push_back(l);
        }
        rep["levels"] = levels;
        print_report(rep);
        if (!phi_out.empty()) io::save_file(phi_out, io::cochain_to_json(res.phi));
        if (!lambda_out.empty()) io::save_file(lambda_out, io::cochain_to_json(res.lambda));
    });

    // tower
    auto* tower = app.add_subcommand("tower", "cohomology along an inverse tower");
    tower->add_option("--tower", tower_path)->required();
    tower->add_option("--module", module_path, "module over the coarsest level")->required();
    tower->add_option("--degree", degree)->required();
    tower->callback([&] {
        apply_config();
        Tower t = io::tower_from_json(io::load_file(tower_path));
        ModulePtr m = io::module_from_json(io::load_file(module_path), t.level(0));
        TowerReport trep = tower_experiment(t, m, degree);
        json rep = io::report_header("tower", {{"tower", tower_path}, {"module", module_path}});
        json levels = json::array();
        for (const CohomologyGroup& h : trep.levels) levels.push_back(h.describe());
        rep["levels"] = levels;
        json steps = json::array();
        for (std::size_t k = 0; k < trep.inflation_matrices.size(); ++k) {
            json s = json::object();
            s["matrix"] = intmat_to_json(trep.inflation_matrices[k]);
            s["injective"] = (bool)trep.step_injective[k];
            s["surjective"] = (bool)trep.step_surjective[k];
            steps.push_back(s);
        }
        rep["steps"] = steps;
        rep["stabilization_index"] = std::to_string(trep.stabilization_index);
        print_report(rep);
    });

    // dirsys
    auto* dirsys = app.add_subcommand("dirsys", "cohomology of a direct system");
    dirsys->add_option("--system", system_path)->required();
    dirsys->add_option("--degree", degree)->required();
    dirsys->callback([&] {
        apply_config();
        DirectSystem d = io::dirsys_from_json(io::load_file(system_path));
        DirectSystemReport drep = direct_system_experiment(d, degree);
        json rep = io::report_header("dirsys", {{"system", system_path}});
        json stages = json::array();
        for (const CohomologyGroup& h : drep.stages) stages.push_back(h.describe());
        rep["stages"] = stages;
        json maps = json::array();
        for (const IntMat& m : drep.stage_maps) maps.push_back(intmat_to_json(m));
        rep["stage_maps"] = maps;
        if (drep.ambient) {
            rep["ambient"] = drep.ambient->describe();
            json gens = json::array();
            for (const auto& g : drep.ambient_generators) {
                json e = json::object();
                e["values_in_stage"] = std::to_string(g.values_in_stage);
                e["class_hit"] = g.class_hit;
                gens.push_back(e);
            }
            rep["ambient_generators"] = gens;
            json dying = json::array();
            for (const auto& dc : drep.dying) {
                json e = json::object();
                e["stage"] = std::to_string(dc.stage);
                e["generator"] = std::to_string(dc.generator);
                e["dies_at"] = std::to_string(dc.dies_at);
                dying.push_back(e);
            }
            rep["dying_classes"] = dying;
        }
        print_report(rep);
    });

    // descend
    auto* descend = app.add_subcommand("descend", "push a cocycle down a quotient map");
    descend->add_option("--cochain", cochain_path)->required();
    descend->add_option("--projection", projection_path, "group hom JSON file")->required();
    descend->add_option("--threshold", threshold);
    descend->add_option("--out", out_path, "write the descended cocycle here");
    descend->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        GroupHom pi = io::hom_from_json(io::load_file(projection_path));
        DescendOptions opts;
        if (!threshold.empty()) opts.threshold_override = Rat::parse(threshold);
        DescendResult res = descend_cocycle(c, pi, opts);
        json rep = io::report_header(
            "descend", {{"cochain", cochain_path}, {"projection", projection_path}});
        rep["success"] = res.success;
        rep["used_exact_fallback"] = res.used_exact_fallback;
        rep["defect_rho0"] = res.defect_rho0.str();
        rep["detail"] = res.detail;
        if (!res.success) rep["class_coords"] = rats_to_json(res.class_coords);
        print_report(rep);
        if (res.success && !out_path.empty())
            io::save_file(out_path, io::cochain_to_json(*res.descended));
    });

    // les
    auto* les = app.add_subcommand("les", "long exact sequence exactness check");
    les->add_option("--ses", ses_path)->required();
    les->add_option("--degree", degree, "largest degree checked")->required();
    les->add_option("--scale", scale, "denominator scale for the Z_Q_QmodZ family");
    les->callback([&] {
        apply_config();
        ModuleSES s = io::ses_from_json(io::load_file(ses_path));
        LesReport lrep = les_check(s, degree, scale);
        json rep = io::report_header("les", {{"ses", ses_path}});
        json slots = json::array();
        for (const LesSlot& slot : lrep.slots) {
            json e = json::object();
            e["degree"] = std::to_string(slot.degree);
            e["at"] = slot.at;
            e["exact"] = slot.exact;
            e["detail"] = slot.detail;
            slots.push_back(e);
        }
        rep["slots"] = slots;
        rep["all_exact"] = lrep.all_exact;
        print_report(rep);
        if (!lrep.all_exact) rc = 3;
    });

    // extension
    auto* ext = app.add_subcommand("extension", "degree-2 extension dictionary");
    ext->require_subcommand(1);

    auto* build = ext->add_subcommand("build", "group extension from a 2-cocycle");
    build->add_option("--cochain", cochain_path)->required();
    build->add_flag("--diagnostic", diagnostic, "report the failing triple for non-cocycles");
    build->callback([&] {
        apply_config();
        Cochain c = io::cochain_from_json(io::load_file(cochain_path));
        json rep = io::report_header("extension build", {{"cochain", cochain_path}});
        if (diagnostic) {
            auto fail = associativity_failure(c);
            if (fail) {
                json t = json::array();
                for (int g : *fail) t.push_back(std::to_string(g));
                rep["associativity_failure"] = t;
                print_report(rep);
                rc = 3;
                return;
            }
        }
        ExtensionPresentation ep = extension_from_cocycle(c);
        rep["extension"] = io::group_to_json(*ep.extension);
        json embed = json::array(), project = json::array();
        for (int v : ep.embed) embed.push_back(std::to_string(v));
        for (int v : ep.project) project.push_back(std::to_string(v));
        rep["embed"] = embed;
        rep["project"] = project;
        rep["normalizer"] = rats_to_json(ep.normalizer.flat());
        rep["cocycle"] = io::cochain_to_json(c);
        print_report(rep);
    });

    auto* factorset = ext->add_subcommand("factorset", "factor set of an extension");
    factorset->add_option("--extension", extension_path,
                          "JSON: {group, module, embed, project, section}")
        ->required();
    factorset->add_option("--out", out_path, "write the factor set here");
    factorset->callback([&] {
        apply_config();
        json doc = io::load_file(extension_path);
        auto need = [&](const char* k) -> const json& {
            if (!doc.contains(k)) throw ParseError(std::string("missing field '") + k + "'");
            return doc.at(k);
        };
        ModulePtr m = io::module_from_json(need("module"));
        GroupPtr e = io::group_from_json(need("group"));
        FactorSetResult res = cocycle_from_extension(m, e, int_array(need("embed")),
                                                     int_array(need("project")),
                                                     int_array(need("section")));
        json rep = io::report_header("extension factorset", {{"extension", extension_path}});
        rep["cochain"] = io::cochain_to_json(res.cocycle);
        json iso = json::array();
        for (int v : res.iso) iso.push_back(std::to_string(v));
        rep["iso"] = iso;
        print_report(rep);
        if (!out_path.empty()) io::save_file(out_path, io::cochain_to_json(res.cocycle));
    });

    auto* equiv = ext->add_subcommand("equiv", "equivalence of two 2-cocycles");
    equiv->add_option("--cochain", cochain_path)->required();
    equiv->add_option("--other", other_path)->required();
    equiv->callback([&] {
        apply_config();
        Cochain a = io::cochain_from_json(io::load_file(cochain_path));
        Cochain b = io::cochain_from_json(io::load_file(other_path), a.module());
        EquivalenceResult res = extensions_equivalent(a, b);
        json rep = io::report_header("extension equiv",
                                     {{"cochain", cochain_path}, {"other", other_path}});
        rep["equivalent"] = res.equivalent;
        if (res.witness) rep["witness"] = rats_to_json(res.witness->flat());
        print_report(rep);
    });

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
    selftest->callback([&] {
        apply_config(); rc = run_selftest(); });

    // let --format/--threads/--max-entries appear after the subcommand too
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; })) {
            s->fallthrough();
            enable_fallthrough(s);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::Input: return 1;
        case ErrorKind::Capacity: return 2;
        case ErrorKind::MathCheck: return 3;
        case ErrorKind::Internal: return 4;
        }
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return rc;
}
