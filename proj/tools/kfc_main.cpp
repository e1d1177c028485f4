// kfc: exact calculator for involutive knot Floer local equivalence.
//
// Subcommands: check, reduce, standard, compare, classify, pair, cable, report.
// Inputs are file paths or std:<name> pseudo-paths naming library objects.
// Exit codes: 0 success, 1 parse error, 2 invariant failure, 3 solver precondition failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfc/assembly.hpp"
#include "kfc/io.hpp"
#include "kfc/local_order.hpp"
#include "kfc/standard.hpp"

using json = nlohmann::ordered_json;
using namespace kfc;

namespace {

struct CliError {
    int code;
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{1, "cannot open " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// std:<name> pseudo-paths; names mirror the standard library (C_n(3), CableSummand(2), ...).
struct StdObject {
    std::optional<IotaComplex> iota;
    std::optional<TypeD> typeD;
    std::optional<TypeA> typeA;
};

std::optional<StdObject> make_standard(const std::string& name) {
    auto param = [&](const std::string& prefix) -> std::optional<int> {
        if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return std::nullopt;
        try {
            return std::stoi(name.substr(prefix.size() + 1, name.size() - prefix.size() - 2));
        } catch (...) {
            return std::nullopt;
        }
    };
    StdObject o;
    if (name == "C_O") { o.iota = make_CO(); return o; }
    if (name == "C_E") { o.iota = make_CE(); return o; }
    if (auto n = param("C_n")) { o.iota = make_Cn(*n); return o; }
    if (name == "CFK_UV_E") { o.iota = make_CFK_UV_E(); return o; }
    if (auto n = param("CableSummand")) { o.iota = make_cable_summand(*n); return o; }
    if (name == "CFD_unknot") {
        TypeD d;
        d.gens.push_back({"t", Idem::I0, Grading{0, 0}});
        d.arrows.push_back({{Rho::R12, 0}});
        o.typeD = d;
        return o;
    }
    if (name == "CFD_E") {
        o.typeD = cfd_from_cfk(truncate(*make_CFK_UV_E().cx, TruncMode::ModUV));
        return o;
    }
    if (name == "CFA_nu") { o.typeA = cfa_nu(6); return o; }
    if (auto n = param("CFA_cable")) { o.typeA = cfa_cable(*n); return o; }
    return std::nullopt;
}

struct LoadedInput {
    StdObject obj;
    std::string origin;
};

LoadedInput load_input(const std::string& spec) {
    LoadedInput li;
    li.origin = spec;
    if (spec.rfind("std:", 0) == 0) {
        auto o = make_standard(spec.substr(4));
        if (!o) throw CliError{1, "unknown standard name " + spec.substr(4)};
        li.obj = *o;
        return li;
    }
    std::string text = slurp(spec);
    ParsedFile pf;
    try {
        pf = parse_file_text(text);
    } catch (const std::exception& e) {
        throw CliError{1, std::string("parse error: ") + e.what()};
    }
    if (std::holds_alternative<ParsedComplex>(pf.value)) {
        const auto& pc = std::get<ParsedComplex>(pf.value);
        StdObject o;
        if (pc.cx.ring() == Ring::F2) {
            // plain F2 complexes carry no involution semantics; usable for check/reduce only
            ComplexPtr cp = std::make_shared<Complex>(pc.cx);
            GMap id = GMap::identity(std::make_shared<Complex>(hat(*cp)));
            id.skew = true;
            o.iota = make_iota_complex(cp, Flavor::Horizontal, id);
        } else {
            o.iota = iota_complex_from_parsed(pc);
        }
        li.obj = o;
        return li;
    }
    if (std::holds_alternative<TypeD>(pf.value)) {
        li.obj.typeD = std::get<TypeD>(pf.value);
        return li;
    }
    li.obj.typeA = std::get<TypeA>(pf.value);
    return li;
}

json map_to_json(const GMap& f) {
    json entries = json::array();
    for (int i = 0; i < f.src->rank(); ++i)
        for (const auto& [j, p] : f.e[i])
            for (Mono m : p.m)
                entries.push_back({{"from", f.src->gen(i).label},
                                   {"to", f.dst->gen(j).label},
                                   {"mono", print_mono(m)}});
    return entries;
}

json witness_to_json(const LocalMapWitness& w) {
    return json{{"map", map_to_json(w.f)}, {"homotopy", map_to_json(w.H)}};
}

json certificate_to_json(const AbsenceCertificate& c) {
    std::string bits;
    for (int i = 0; i < c.lambda.n; ++i) bits += c.lambda.get(i) ? '1' : '0';
    return json{{"unknowns", c.unknowns}, {"summary", c.summary}, {"row_combination", bits}};
}

json find_to_json(const FindResult& r) {
    json j;
    j["exists"] = r.found();
    if (r.found()) j["witness"] = witness_to_json(*r.witness);
    else j["certificate"] = certificate_to_json(*r.certificate);
    return j;
}

void emit(const json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // plain text rendering
    std::function<void(const json&, int)> walk = [&](const json& v, int indent) {
        std::string pad(indent, ' ');
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (it.value().is_object() || it.value().is_array()) {
                    std::cout << pad << it.key() << ":\n";
                    walk(it.value(), indent + 2);
                } else {
                    std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
                }
            }
        } else if (v.is_array()) {
            for (const auto& x : v) {
                if (x.is_object() || x.is_array()) walk(x, indent + 2);
                else std::cout << pad << "- " << x.dump() << "\n";
            }
        } else {
            std::cout << pad << v.dump() << "\n";
        }
    };
    walk(j, 0);
}

IotaComplex require_horizontal(const LoadedInput& li) {
    if (!li.obj.iota) throw CliError{3, li.origin + " is not an iota-complex"};
    IotaComplex X = *li.obj.iota;
    if (X.flavor == Flavor::FullUV) X = horizontal_from_fulluv(X);
    AxiomReport ax = check_horizontal_axioms(X);
    if (!ax.ok()) throw CliError{3, li.origin + " fails the horizontal axioms: " + ax.failures[0]};
    return X;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kfc: involutive knot Floer local-equivalence calculator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable report");
    bool with_oracle = false;
    app.add_flag("--oracle", with_oracle, "brute-force cross-check solver queries (<= 20 unknowns)");

    std::string in1, in2, outpath;
    int cable_n = 1;

    auto* c_check = app.add_subcommand("check", "validate a complex or module file");
    c_check->add_option("input", in1)->required();
    auto* c_reduce = app.add_subcommand("reduce", "cancel unit differentials");
    c_reduce->add_option("input", in1)->required();
    auto* c_standard = app.add_subcommand("standard", "emit a standard-library object");
    c_standard->add_option("name", in1)->required();
    auto* c_compare = app.add_subcommand("compare", "local-order comparison of two iota-complexes");
    c_compare->add_option("X", in1)->required();
    c_compare->add_option("Y", in2)->required();
    auto* c_classify = app.add_subcommand("classify", "torsion classifier");
    c_classify->add_option("X", in1)->required();
    auto* c_pair = app.add_subcommand("pair", "box tensor of a type-A and a type-D file");
    c_pair->add_option("A", in1)->required();
    c_pair->add_option("D", in2)->required();
    auto* c_cable = app.add_subcommand("cable", "cable pipeline: cfd, pattern, box tensor, reduce");
    c_cable->add_option("--n", cable_n, "cable parameter (2n+1,-1)")->required();
    c_cable->add_option("cfk", in1)->required();
    auto* c_report = app.add_subcommand("report", "full axiom report for an iota-complex");
    c_report->add_option("X", in1)->required();

    CLI11_PARSE(app, argc, argv);
    oracle().enabled = with_oracle;

    try {
        if (*c_check) {
            LoadedInput li = load_input(in1);
            json j;
            if (li.obj.typeD) {
                ValidationReport r = check_typeD(*li.obj.typeD);
                j["kind"] = "typeD";
                j["errors"] = r.errors;
                emit(j, as_json);
                return r.ok() ? 0 : 2;
            }
            if (li.obj.typeA) {
                ValidationReport r = check_typeA(*li.obj.typeA);
                j["kind"] = "typeA";
                j["errors"] = r.errors;
                emit(j, as_json);
                return r.ok() ? 0 : 2;
            }
            ValidationReport r = validate(*li.obj.iota->cx);
            j["kind"] = "complex";
            j["errors"] = r.errors;
            j["notes"] = r.notes;
            emit(j, as_json);
            return r.ok() ? 0 : 2;
        }
        if (*c_reduce) {
            LoadedInput li = load_input(in1);
            if (!li.obj.iota) throw CliError{1, "reduce expects a complex file"};
            Reduction r = reduce(*li.obj.iota->cx);
            std::cout << print_complex(*r.reduced);
            return 0;
        }
        if (*c_standard) {
            auto o = make_standard(in1);
            if (!o) throw CliError{1, "unknown standard name " + in1};
            if (o->typeD) {
                std::cout << print_typeD(*o->typeD);
                return 0;
            }
            if (o->typeA) {
                std::cout << print_typeA(*o->typeA);
                return 0;
            }
            std::cout << print_complex(*o->iota->cx);
            std::cout << print_iota_block(*o->iota->hat_cx, o->iota->iota);
            return 0;
        }
        if (*c_compare) {
            IotaComplex X = require_horizontal(load_input(in1));
            IotaComplex Y = require_horizontal(load_input(in2));
            ComparisonResult r = compare(X, Y);
            if (!as_json) {
                std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
                auto show = [&](const char* dir, const FindResult& fr, const std::string& s,
                               const std::string& t) {
                    if (fr.found()) {
                        std::cout << dir << ": map found\n";
                        std::cout << "source: " << s << "\n";
                        std::cout << "target: " << t << "\n";
                        std::cout << print_map_block(fr.witness->f);
                        std::cout << "homotopy:\n" << print_map_block(fr.witness->H);
                    } else {
                        std::cout << dir << ": absent (" << fr.certificate->summary << ", "
                                  << fr.certificate->unknowns << " unknowns)\n";
                    }
                };
                show("forward", r.forward, in1, in2);
                show("backward", r.backward, in2, in1);
                if (with_oracle)
                    std::cout << "oracle: checked " << oracle().checked << ", disagreements "
                              << oracle().disagreements << "\n";
                return 0;
            }
            json j;
            j["verdict"] = verdict_name(r.verdict);
            j["forward"] = find_to_json(r.forward);
            j["backward"] = find_to_json(r.backward);
            if (with_oracle) {
                j["oracle"] = {{"checked", oracle().checked}, {"disagreements", oracle().disagreements}};
            }
            emit(j, as_json);
            return 0;
        }
        if (*c_classify) {
            IotaComplex X = require_horizontal(load_input(in1));
            ClassifyResult r = classify_A(X);
            if (!as_json) {
                std::cout << "A = " << classify_value_name(r.value) << "\n";
                std::cout << "vs C_O: " << verdict_name(r.vs_CO.verdict) << "\n";
                std::cout << "vs C_E: " << verdict_name(r.vs_CE.verdict) << "\n";
                for (const auto& nmsg : r.notes) std::cout << "note: " << nmsg << "\n";
                return 0;
            }
            json j;
            j["A"] = classify_value_name(r.value);
            j["vs_C_O"] = verdict_name(r.vs_CO.verdict);
            j["vs_C_E"] = verdict_name(r.vs_CE.verdict);
            for (const auto& nmsg : r.notes) j["notes"].push_back(nmsg);
            emit(j, as_json);
            return 0;
        }
        if (*c_pair) {
            LoadedInput la = load_input(in1), ld = load_input(in2);
            if (!la.obj.typeA) throw CliError{1, in1 + " is not a type-A file"};
            if (!ld.obj.typeD) throw CliError{1, in2 + " is not a type-D file"};
            ValidationReport rd = check_typeD(*ld.obj.typeD);
            if (!rd.ok()) throw CliError{2, "type-D structure equations fail"};
            BoxResult b = box_tensor(*la.obj.typeA, *ld.obj.typeD);
            std::cout << print_complex(*b.cx);
            return 0;
        }
        if (*c_cable) {
            LoadedInput li = load_input(in1);
            if (!li.obj.iota) throw CliError{1, "cable expects a CFK complex file"};
            Complex r_cx = *li.obj.iota->cx;
            if (r_cx.ring() == Ring::F2UV) r_cx = truncate(r_cx, TruncMode::ModUV);
            if (r_cx.ring() != Ring::R) throw CliError{3, "cable expects an R or F2UV complex"};
            ComplexPtr out = cable_pipeline_complex(cable_n, r_cx);
            std::cout << print_complex(*out);
            return 0;
        }
        if (*c_report) {
            LoadedInput li = load_input(in1);
            if (!li.obj.iota) throw CliError{1, "report expects an iota-complex"};
            IotaComplex X = *li.obj.iota;
            AxiomReport ax = X.flavor == Flavor::FullUV ? check_fulluv_axioms(X)
                                                        : check_horizontal_axioms(X);
            json j;
            j["flavor"] = X.flavor == Flavor::FullUV ? "fullUV" : "horizontal";
            j["failures"] = ax.failures;
            j["notes"] = ax.notes;
            emit(j, as_json);
            return ax.ok() ? 0 : 2;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
