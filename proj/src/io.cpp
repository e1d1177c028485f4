#include "kfc/io.hpp"

#include <sstream>
#include <stdexcept>

namespace kfc {

std::string print_mono(Mono m) {
    if (m.u == 0 && m.v == 0) return "1";
    std::string s;
    if (m.u > 0) s += "U^" + std::to_string(m.u);
    if (m.v > 0) s += "V^" + std::to_string(m.v);
    return s;
}

static Mono parse_mono(const std::string& s) {
    if (s == "1") return {0, 0};
    Mono m{0, 0};
    size_t i = 0;
    auto read_var = [&](char var, int& out) {
        if (i < s.size() && s[i] == var) {
            ++i;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                while (j < s.size() && isdigit(s[j])) ++j;
                if (j == i) throw std::invalid_argument("bad monomial: " + s);
                out = std::stoi(s.substr(i, j - i));
                i = j;
            } else {
                out = 1;
            }
        }
    };
    read_var('U', m.u);
    read_var('V', m.v);
    if (i != s.size() || (m.u == 0 && m.v == 0)) throw std::invalid_argument("bad monomial: " + s);
    return m;
}

static Ring parse_ring(const std::string& s) {
    if (s == "F2") return Ring::F2;
    if (s == "F2U") return Ring::F2U;
    if (s == "R") return Ring::R;
    if (s == "F2UV") return Ring::F2UV;
    throw std::invalid_argument("unknown ring: " + s);
}

static bool am_presented(Ring r) { return r == Ring::F2U; }

std::string print_complex(const Complex& c) {
    std::ostringstream os;
    os << "ring: " << ring_name(c.ring()) << "\n";
    for (const auto& g : c.gens()) {
        if (am_presented(c.ring()))
            os << "gen " << g.label << " " << alexander(g.gr) << " " << maslov(g.gr) << "\n";
        else
            os << "gen " << g.label << " " << g.gr.u << " " << g.gr.v << "\n";
    }
    for (int i = 0; i < c.rank(); ++i)
        for (const auto& [j, p] : c.dif(i))
            for (Mono m : p.m)
                os << "d " << c.gen(i).label << " " << c.gen(j).label << " " << print_mono(m) << "\n";
    return os.str();
}

std::string print_iota_block(const Complex& c, const GMap& hat_iota) {
    std::ostringstream os;
    for (int i = 0; i < int(hat_iota.e.size()); ++i)
        for (const auto& [j, p] : hat_iota.e[i])
            if (!p.is_zero()) os << "iota " << c.gen(i).label << " " << c.gen(j).label << "\n";
    return os.str();
}

std::string print_typeD(const TypeD& d) {
    std::ostringstream os;
    os << "module: typeD\n";
    for (const auto& g : d.gens) os << "idem " << g.label << " " << (g.idem == Idem::I0 ? 0 : 1) << "\n";
    for (int i = 0; i < d.rank(); ++i)
        for (const auto& [r, j] : d.arrows[i])
            os << "darrow " << d.gens[i].label << " " << d.gens[j].label << " " << rho_name(r) << "\n";
    return os.str();
}

std::string print_typeA(const TypeA& a) {
    std::ostringstream os;
    os << "module: typeA\n";
    for (const auto& g : a.gens) os << "idem " << g.label << " " << (g.idem == Idem::I0 ? 0 : 1) << "\n";
    for (const auto& op : a.ops) {
        os << "aop " << a.gens[op.from].label;
        for (Rho r : op.word) os << " " << rho_name(r);
        os << " U^" << op.upow << " " << a.gens[op.to].label << "\n";
    }
    return os.str();
}

std::string print_map_block(const GMap& f) {
    std::ostringstream os;
    for (int i = 0; i < f.src->rank(); ++i)
        for (const auto& [j, p] : f.e[i])
            for (Mono m : p.m)
                os << "map " << f.src->gen(i).label << " " << f.dst->gen(j).label << " "
                   << print_mono(m) << "\n";
    return os.str();
}

ParsedComplex parse_complex_text(const std::string& text) {
    ParsedFile pf = parse_file_text(text);
    if (!std::holds_alternative<ParsedComplex>(pf.value))
        throw std::invalid_argument("expected a complex file");
    return std::get<ParsedComplex>(pf.value);
}

ParsedFile parse_file_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::optional<Ring> ring;
    std::optional<std::string> module_kind;
    std::vector<Generator> gens;
    std::vector<std::tuple<std::string, std::string, Mono>> dlines;
    std::vector<std::pair<std::string, std::string>> iotas;
    std::vector<std::pair<std::string, Idem>> idems;
    std::vector<std::tuple<std::string, std::string, Rho>> darrows;
    std::vector<std::tuple<std::string, std::vector<Rho>, int, std::string>> aops;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "ring:") {
            std::string r;
            if (!(ls >> r)) fail("missing ring");
            ring = parse_ring(r);
        } else if (tok == "module:") {
            std::string k;
            if (!(ls >> k)) fail("missing module kind");
            if (k != "typeD" && k != "typeA") fail("unknown module kind " + k);
            module_kind = k;
        } else if (tok == "gen") {
            std::string lbl;
            int g1, g2;
            if (!(ls >> lbl >> g1 >> g2)) fail("gen: expected label and two integers");
            gens.push_back({lbl, {g1, g2}});  // interpretation fixed once the ring is known
        } else if (tok == "d") {
            std::string a, b, m;
            if (!(ls >> a >> b >> m)) fail("d: expected from, to, monomial");
            dlines.push_back({a, b, parse_mono(m)});
        } else if (tok == "iota") {
            std::string a, b;
            if (!(ls >> a >> b)) fail("iota: expected from, to");
            iotas.push_back({a, b});
        } else if (tok == "idem") {
            std::string lbl;
            int v;
            if (!(ls >> lbl >> v) || (v != 0 && v != 1)) fail("idem: expected label and 0|1");
            idems.push_back({lbl, v == 0 ? Idem::I0 : Idem::I1});
        } else if (tok == "darrow") {
            std::string a, b, r;
            if (!(ls >> a >> b >> r)) fail("darrow: expected from, to, rho");
            auto rr = rho_parse(r);
            if (!rr) fail("unknown rho " + r);
            darrows.push_back({a, b, *rr});
        } else if (tok == "aop") {
            std::string from;
            if (!(ls >> from)) fail("aop: expected generator");
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (toks.size() < 2) fail("aop: expected rho-word, U^j, target");
            std::string target = toks.back();
            std::string upow = toks[toks.size() - 2];
            if (upow.rfind("U^", 0) != 0) fail("aop: expected U^j weight");
            int j = std::stoi(upow.substr(2));
            std::vector<Rho> word;
            for (size_t i = 0; i + 2 < toks.size(); ++i) {
                auto rr = rho_parse(toks[i]);
                if (!rr) fail("unknown rho " + toks[i]);
                word.push_back(*rr);
            }
            aops.push_back({from, word, j, target});
        } else {
            fail("unknown directive " + tok);
        }
    }
    if (module_kind) {
        if (*module_kind == "typeD") {
            TypeD d;
            for (auto& [lbl, id] : idems) d.gens.push_back({lbl, id, std::nullopt});
            d.arrows.assign(d.gens.size(), {});
            for (auto& [a, b, r] : darrows) {
                int i = d.index_of(a), j = d.index_of(b);
                if (i < 0 || j < 0) throw std::invalid_argument("darrow references unknown generator");
                d.arrows[i].push_back({r, j});
            }
            return ParsedFile{d};
        }
        TypeA a;
        for (auto& [lbl, id] : idems) a.gens.push_back({lbl, id});
        for (auto& [from, word, j, to] : aops) {
            int i = a.index_of(from), k = a.index_of(to);
            if (i < 0 || k < 0) throw std::invalid_argument("aop references unknown generator");
            a.ops.push_back({i, word, j, k});
        }
        return ParsedFile{a};
    }
    if (!ring) throw std::invalid_argument("missing ring: header");
    // fix grading interpretation
    if (am_presented(*ring))
        for (auto& g : gens) g.gr = from_am(g.gr.u, g.gr.v);
    ParsedComplex pc{Complex(*ring, gens), !iotas.empty(), iotas};
    for (auto& [a, b, m] : dlines) {
        int i = pc.cx.index_of(a), j = pc.cx.index_of(b);
        if (i < 0 || j < 0) throw std::invalid_argument("d references unknown generator");
        if (!ring_admits(*ring, m)) throw std::invalid_argument("monomial not in the ring");
        pc.cx.add_entry(i, j, Poly{m});
    }
    return ParsedFile{pc};
}

IotaComplex iota_complex_from_parsed(const ParsedComplex& pc) {
    ComplexPtr cp = std::make_shared<Complex>(pc.cx);
    ComplexPtr hp = std::make_shared<Complex>(hat(*cp));
    GMap iota = GMap::zero(hp, hp, Grading{0, 0}, true);
    for (const auto& [a, b] : pc.iota_entries) {
        int i = hp->index_of(a), j = hp->index_of(b);
        if (i < 0 || j < 0) throw std::invalid_argument("iota references unknown generator");
        iota.add_entry(i, j, Poly::unit());
    }
    Flavor fl = cp->ring() == Ring::F2U ? Flavor::Horizontal : Flavor::FullUV;
    if (cp->ring() == Ring::F2)
        throw std::invalid_argument("iota complexes need F2U or a UV-family ring");
    return make_iota_complex(cp, fl, iota);
}

}  // namespace kfc
