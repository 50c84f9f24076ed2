#include "cocyclelab/io.hpp"

#include <fstream>
#include <sstream>

#include "cocyclelab/config.hpp"
#include "cocyclelab/errors.hpp"

namespace cocyclelab::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str_field(const json& j) {
    if (!j.is_string()) throw ParseError("expected a decimal string");
    return j.get<std::string>();
}

long long ll_from_json(const json& j) {
    Rat r = Rat::parse(str_field(j));
    if (!r.is_integer()) throw ParseError("expected an integer, got '" + r.str() + "'");
    return r.num();
}

json ll_to_json(long long v) { return json(std::to_string(v)); }

std::vector<Rat> rat_array(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    std::vector<Rat> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(Rat::parse(str_field(e)));
    return out;
}

json rat_array_to_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(r.str());
    return a;
}

std::vector<int> int_array(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back((int)ll_from_json(e));
    return out;
}

} // namespace

json rat_to_json(const Rat& r) { return json(r.str()); }
Rat rat_from_json(const json& j) { return Rat::parse(str_field(j)); }

json big_to_json(const BigInt& b) { return json(b.str()); }
BigInt big_from_json(const json& j) {
    std::string s = str_field(j);
    try {
        return BigInt(s);
    } catch (const std::exception&) {
        throw ParseError("bad integer literal '" + s + "'");
    }
}

json group_to_json(const FiniteGroup& g) {
    json j = json::object();
    j["order"] = ll_to_json(g.order());
    json mul = json::array();
    for (int v : g.table()) mul.push_back(ll_to_json(v));
    j["mul"] = mul;
    if (!g.label().empty()) j["label"] = g.label();
    return j;
}

GroupPtr group_from_json(const json& j) {
    int order = (int)ll_from_json(field(j, "order"));
    std::vector<int> mul = int_array(field(j, "mul"));
    std::string label = j.contains("label") ? str_field(j.at("label")) : "";
    return std::make_shared<const FiniteGroup>(order, std::move(mul), std::move(label));
}

json hom_to_json(const GroupHom& h) {
    json j = json::object();
    j["source"] = group_to_json(*h.source());
    j["target"] = group_to_json(*h.target());
    json m = json::array();
    for (int v : h.map()) m.push_back(ll_to_json(v));
    j["map"] = m;
    return j;
}

GroupHom hom_from_json(const json& j) {
    return GroupHom(group_from_json(field(j, "source")), group_from_json(field(j, "target")),
                    int_array(field(j, "map")));
}

namespace {

json coeffs_to_json(const CoefficientGroup& c) {
    json j = json::object();
    switch (c.kind()) {
    case CoeffKind::FreeAbelian:
        j["kind"] = "free_abelian";
        j["rank"] = ll_to_json(c.dim());
        break;
    case CoeffKind::FiniteAbelian: {
        j["kind"] = "finite_abelian";
        json f = json::array();
        for (long long m : c.factors()) f.push_back(ll_to_json(m));
        j["factors"] = f;
        break;
    }
    case CoeffKind::RationalVector:
        j["kind"] = "rational_vector";
        j["dimension"] = ll_to_json(c.dim());
        break;
    case CoeffKind::RationalTorus:
        j["kind"] = "rational_torus";
        j["dimension"] = ll_to_json(c.dim());
        break;
    case CoeffKind::Induced:
        j["kind"] = "induced";
        j["base"] = module_to_json(*c.base(), true);
        break;
    case CoeffKind::Quotient:
        j["kind"] = "quotient";
        j["base"] = module_to_json(*c.base(), true);
        break;
    }
    return j;
}

} // namespace

json module_to_json(const GModule& m, bool with_group) {
    json j = json::object();
    if (with_group) j["group"] = group_to_json(*m.group());
    j["coefficients"] = coeffs_to_json(*m.coeffs());
    json act = json::object();
    switch (m.action_kind()) {
    case ActionKind::Trivial:
        act["type"] = "trivial";
        break;
    case ActionKind::Matrices: {
        act["type"] = "matrices";
        json mats = json::array();
        for (int g = 0; g < m.group()->order(); ++g)
            mats.push_back(rat_array_to_json(m.action_matrix(g)));
        act["matrices"] = mats;
        break;
    }
    case ActionKind::Diagonal:
        act["type"] = "diagonal";
        break;
    }
    j["action"] = act;
    j["isometric"] = m.isometric();
    return j;
}

ModulePtr module_from_json(const json& j, GroupPtr group) {
    if (!group) {
        if (!j.contains("group"))
            throw ParseError("module document needs a group (embedded or via --group)");
        group = group_from_json(j.at("group"));
    }
    const json& cj = field(j, "coefficients");
    std::string kind = str_field(field(cj, "kind"));

    if (kind == "induced" || kind == "quotient") {
        ModulePtr base = module_from_json(field(cj, "base"));
        return kind == "induced" ? GModule::induced_of(base) : GModule::quotient_of(base);
    }

    CoeffPtr coeffs;
    if (kind == "free_abelian")
        coeffs = CoefficientGroup::free_abelian((int)ll_from_json(field(cj, "rank")));
    else if (kind == "finite_abelian") {
        std::vector<long long> factors;
        for (const auto& e : field(cj, "factors")) factors.push_back(ll_from_json(e));
        coeffs = CoefficientGroup::finite_abelian(std::move(factors));
    } else if (kind == "rational_vector")
        coeffs = CoefficientGroup::rational_vector((int)ll_from_json(field(cj, "dimension")));
    else if (kind == "rational_torus")
        coeffs = CoefficientGroup::rational_torus((int)ll_from_json(field(cj, "dimension")));
    else
        throw ParseError("unknown coefficient kind '" + kind + "'");

    const json& aj = field(j, "action");
    std::string type = str_field(field(aj, "type"));
    if (type == "trivial") return GModule::trivial(std::move(group), std::move(coeffs));
    if (type == "matrices") {
        const json& mats = field(aj, "matrices");
        std::vector<std::vector<Rat>> rows;
        for (const auto& e : mats) rows.push_back(rat_array(e));
        return GModule::with_matrices(std::move(group), std::move(coeffs), std::move(rows));
    }
    throw ParseError("unknown action type '" + type + "'");
}

json cochain_to_json(const Cochain& c) {
    json j = json::object();
    j["module"] = module_to_json(*c.module(), true);
    j["degree"] = ll_to_json(c.degree());
    j["values"] = rat_array_to_json(c.flat());
    return j;
}

Cochain cochain_from_json(const json& j, ModulePtr module) {
    if (!module) module = module_from_json(field(j, "module"));
    int degree = (int)ll_from_json(field(j, "degree"));
    std::vector<Rat> values = rat_array(field(j, "values"));
    return Cochain(std::move(module), degree, std::move(values));
}

json tower_to_json(const Tower& t) {
    json j = json::object();
    json groups = json::array();
    for (int m = 0; m < t.size(); ++m) groups.push_back(group_to_json(*t.level(m)));
    j["groups"] = groups;
    json steps = json::array();
    for (int m = 0; m + 1 < t.size(); ++m) {
        json s = json::array();
        for (int v : t.step(m).map()) s.push_back(ll_to_json(v));
        steps.push_back(s);
    }
    j["steps"] = steps;
    return j;
}

Tower tower_from_json(const json& j) {
    std::vector<GroupPtr> levels;
    for (const auto& e : field(j, "groups")) levels.push_back(group_from_json(e));
    const json& sj = field(j, "steps");
    if (sj.size() + 1 != levels.size())
        throw ParseError("a tower needs one step per consecutive level pair");
    std::vector<GroupHom> steps;
    for (std::size_t m = 0; m < sj.size(); ++m)
        steps.emplace_back(levels[m + 1], levels[m], int_array(sj.at(m)));
    return Tower(std::move(levels), std::move(steps));
}

ModuleSES ses_from_json(const json& j) {
    std::string family = str_field(field(j, "family"));
    if (family == "ZxmZ_Zm")
        return make_ses_zxm(module_from_json(field(j, "module")),
                            ll_from_json(field(j, "multiplier")));
    if (family == "Z_Q_QmodZ")
        return make_ses_z_q_qmodz(module_from_json(field(j, "module")));
    if (family == "explicit") {
        // all three modules must live over one group object
        GroupPtr g = j.contains("group") ? group_from_json(j.at("group"))
                                         : group_from_json(field(field(j, "a"), "group"));
        auto over_g = [&](const char* key) {
            json doc = field(j, key);
            doc.erase("group");
            return module_from_json(doc, g);
        };
        return make_ses_explicit(over_g("a"), over_g("b"), over_g("c"),
                                 rat_array(field(j, "i")), rat_array(field(j, "j")));
    }
    throw ParseError("unknown ses family '" + family + "'");
}

DirectSystem dirsys_from_json(const json& j) {
    GroupPtr group = group_from_json(field(j, "group"));
    std::vector<ModulePtr> stages;
    for (const auto& e : field(j, "stages")) stages.push_back(module_from_json(e, group));
    const json& ij = field(j, "inclusions");
    if (ij.size() + 1 != stages.size())
        throw ParseError("a direct system needs one inclusion per consecutive stage pair");
    std::vector<ModuleHom> inclusions;
    for (std::size_t m = 0; m < ij.size(); ++m)
        inclusions.emplace_back(stages[m], stages[m + 1], rat_array(ij.at(m)));
    ModulePtr ambient;
    std::vector<ModuleHom> into_ambient;
    if (j.contains("ambient")) {
        ambient = module_from_json(j.at("ambient"), group);
        const json& aj = field(j, "into_ambient");
        if (aj.size() != stages.size())
            throw ParseError("each stage needs a map into the ambient module");
        for (std::size_t m = 0; m < aj.size(); ++m)
            into_ambient.emplace_back(stages[m], ambient, rat_array(aj.at(m)));
    }
    return DirectSystem(std::move(stages), std::move(inclusions), std::move(ambient),
                        std::move(into_ambient));
}

json load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

std::string dumps(const json& doc) { return doc.dump(2) + "\n"; }

void save_file(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << dumps(doc);
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

json report_header(const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& input_files) {
    json j = json::object();
    j["tool"] = "cocyclelab";
    j["command"] = command;
    json cfg = json::object();
    // the thread count is deliberately absent: it must never affect output
    cfg["max_entries"] = std::to_string(max_table_entries());
    j["config"] = cfg;
    json inputs = json::object();
    for (const auto& [name, path] : input_files) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        inputs[name] = digest(buf.str());
    }
    j["inputs"] = inputs;
    return j;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j.at(i), prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": ";
        if (j.is_string())
            out << j.get<std::string>();
        else
            out << j.dump();
        out << "\n";
    }
}

} // namespace

std::string to_table(const json& doc) {
    std::ostringstream out;
    flatten(doc, "", out);
    return out.str();
}

json cohomology_to_json(const CohomologyGroup& h, bool with_generators) {
    json j = json::object();
    j["degree"] = ll_to_json(h.degree);
    j["description"] = h.describe();
    j["rational"] = h.rational;
    j["rank"] = ll_to_json(h.rank);
    j["order"] = big_to_json(h.order());
    json f = json::array();
    for (const BigInt& d : h.invariant_factors) f.push_back(big_to_json(d));
    j["invariant_factors"] = f;
    if (with_generators) {
        json gens = json::array();
        for (const Cochain& g : h.generators) gens.push_back(rat_array_to_json(g.flat()));
        j["generators"] = gens;
    }
    return j;
}

} // namespace cocyclelab::io
