#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmcat/verdict.hpp"

namespace cmcat {
namespace io {

// Ordered so that dumps are byte-stable across runs.
using Json = nlohmann::ordered_json;

// --- files and raw JSON -------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

inline Json parse_json(const std::string& text, const std::string& what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what + ": not valid JSON");
    return j;
}

// --- quiver files ---------------------------------------------------------
// {"vertices": n, "arrows": [[s, t], ...]} with 1-based vertex numbers.

inline Quiver quiver_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
        throw ParseError(
            "quiver JSON needs {\"vertices\": n, \"arrows\": [[s,t],...]}");
    if (!j["vertices"].is_number_integer())
        throw ParseError("\"vertices\" must be an integer");
    if (!j["arrows"].is_array()) throw ParseError("\"arrows\" must be an array");
    int n = j["vertices"].get<int>();
    std::vector<std::pair<int, int>> arrows;
    for (const Json& a : j["arrows"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() ||
            !a[1].is_number_integer())
            throw ParseError("each arrow must be a [source, target] pair");
        arrows.emplace_back(a[0].get<int>() - 1, a[1].get<int>() - 1);
    }
    return Quiver::from_arrows(n, std::move(arrows));
}

inline Quiver load_quiver(const std::string& path) {
    return quiver_from_json(parse_json(read_file(path), path));
}

// --- object names ---------------------------------------------------------
// Roots print as bare tuples "(1,1,0)" with "[1]" marking a shifted
// projective.  On input the Dynkin aliases S1/P2/I3 (1-based, from the
// quiver) are accepted alongside tuples.

inline std::string type_str(QType t) {
    switch (t) {
        case QType::Finite: return "finite";
        case QType::Tame: return "tame";
        default: return "wild";
    }
}

inline std::map<std::string, IVec> name_table(const Algebra& a) {
    std::map<std::string, IVec> t;
    for (int i = 0; i < a.n(); ++i) {
        IVec s(a.n(), 0);
        s[i] = 1;
        t["S" + std::to_string(i + 1)] = s;
        t["P" + std::to_string(i + 1)] = a.proj[i];
        t["I" + std::to_string(i + 1)] = a.inj[i];
    }
    return t;
}

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline IVec parse_root(const Algebra& a, const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw ParseError("empty object name");
    if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("unbalanced tuple: " + s);
        IVec v;
        std::string body = s.substr(1, s.size() - 2), tok;
        std::istringstream is(body);
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            size_t used = 0;
            Int x = 0;
            try {
                x = std::stoll(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("bad tuple entry in " + s);
            }
            if (used != tok.size()) throw ParseError("bad tuple entry in " + s);
            v.push_back(x);
        }
        if (static_cast<int>(v.size()) != a.n())
            throw ParseError("tuple " + s + " has " + std::to_string(v.size()) +
                             " entries, quiver has " + std::to_string(a.n()));
        return v;
    }
    std::map<std::string, IVec> t = name_table(a);
    auto it = t.find(s);
    if (it == t.end()) throw ParseError("unknown object name: " + s);
    return it->second;
}

inline ExcObj parse_object(const Algebra& a, const std::string& raw) {
    std::string s = trim(raw);
    bool shifted = false;
    if (s.size() >= 3 && s.substr(s.size() - 3) == "[1]") {
        shifted = true;
        s = trim(s.substr(0, s.size() - 3));
    }
    return ExcObj{parse_root(a, s), shifted};
}

// Comma-separated object list; commas inside tuples do not split.
inline Cluster parse_cluster(const Algebra& a, const std::string& s) {
    Cluster t;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            t.push_back(parse_object(a, cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) t.push_back(parse_object(a, cur));
    canonicalize(t);
    return t;
}

inline std::string object_str(const ExcObj& o) {
    return ivec_str(o.root) + (o.shifted ? "[1]" : "");
}

inline std::string cluster_str(const Cluster& t) {
    std::string s;
    for (const ExcObj& o : t) {
        if (!s.empty()) s += " ";
        s += object_str(o);
    }
    return s;
}

inline std::string wide_str(const Wide& w) {
    std::string s = "{";
    for (size_t i = 0; i < w.simples.size(); ++i) {
        if (i) s += ",";
        s += ivec_str(w.simples[i]);
    }
    return s + "}";
}

// --- JSON serializers -------------------------------------------------------

inline Json object_json(const ExcObj& o) {
    return Json{{"root", o.root}, {"shifted", o.shifted}};
}

inline ExcObj object_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("root") || !j.contains("shifted"))
        throw ParseError("object needs {\"root\": [...], \"shifted\": bool}");
    return ExcObj{j["root"].get<IVec>(), j["shifted"].get<bool>()};
}

inline Json cluster_json(const Cluster& t) {
    Json objs = Json::array();
    for (const ExcObj& o : t) objs.push_back(object_json(o));
    return Json{{"objects", objs}};
}

inline Cluster cluster_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("objects") || !j["objects"].is_array())
        throw ParseError("cluster needs {\"objects\": [...]}");
    Cluster t;
    for (const Json& o : j["objects"]) t.push_back(object_from_json(o));
    canonicalize(t);
    return t;
}

inline Json morph_json(const Morph& m) {
    Json cl = Json::array();
    for (const ExcObj& o : m.cluster) cl.push_back(object_json(o));
    return Json{{"source", m.source.simples},
                {"cluster", cl},
                {"target", m.target.simples}};
}

inline Json category_json(const Category& c) {
    Json objs = Json::array();
    for (size_t i = 0; i < c.objects.size(); ++i)
        objs.push_back(Json{{"simples", c.objects[i].simples},
                            {"complete", static_cast<bool>(c.complete[i])}});
    Json morphs = Json::array();
    for (const Morph& m : c.morphisms) morphs.push_back(morph_json(m));
    return Json{{"objects", objs}, {"morphisms", morphs}, {"partial", c.partial}};
}

inline Category category_from_json(const Algebra& a, const Json& j) {
    if (!j.is_object() || !j.contains("objects") || !j.contains("morphisms") ||
        !j.contains("partial"))
        throw ParseError("category needs objects, morphisms, and partial fields");
    Category c;
    for (const Json& o : j["objects"]) {
        if (!o.contains("simples") || !o.contains("complete"))
            throw ParseError("category object needs simples and complete");
        Wide w = Wide::from_simples(a, o["simples"].get<std::vector<IVec>>(), {});
        if (c.obj_index.count(w.key()))
            throw ParseError("duplicate category object " + w.key());
        c.obj_index[w.key()] = static_cast<int>(c.objects.size());
        c.objects.push_back(std::move(w));
        c.complete.push_back(o["complete"].get<bool>());
    }
    auto lookup = [&](std::vector<IVec> simples) {
        std::sort(simples.begin(), simples.end(), RootLess{});
        std::string key;
        for (const IVec& v : simples) key += ivec_str(v);
        if (key.empty()) key = "0";
        auto it = c.obj_index.find(key);
        if (it == c.obj_index.end())
            throw ParseError("morphism endpoint " + key + " is not an object");
        return it->second;
    };
    for (const Json& mj : j["morphisms"]) {
        if (!mj.contains("source") || !mj.contains("cluster") ||
            !mj.contains("target"))
            throw ParseError("morphism needs source, cluster, and target");
        Morph m;
        m.source = c.objects[lookup(mj["source"].get<std::vector<IVec>>())];
        m.target = c.objects[lookup(mj["target"].get<std::vector<IVec>>())];
        for (const Json& o : mj["cluster"]) m.cluster.push_back(object_from_json(o));
        canonicalize(m.cluster);
        if (c.morph_index.count(m.key()))
            throw ParseError("duplicate morphism " + m.key());
        c.morph_index[m.key()] = static_cast<int>(c.morphisms.size());
        c.morphisms.push_back(std::move(m));
    }
    c.partial = j["partial"].get<bool>();
    return c;
}

// Canonical-key equality: same objects, flags, and morphisms in order.
inline bool category_equal(const Category& a, const Category& b) {
    if (a.objects.size() != b.objects.size() ||
        a.morphisms.size() != b.morphisms.size() || a.partial != b.partial)
        return false;
    for (size_t i = 0; i < a.objects.size(); ++i)
        if (a.objects[i].key() != b.objects[i].key() ||
            a.complete[i] != b.complete[i])
            return false;
    for (size_t i = 0; i < a.morphisms.size(); ++i)
        if (a.morphisms[i].key() != b.morphisms[i].key()) return false;
    return true;
}

inline Json word_json(const GroupWord& w) {
    Json out = Json::array();
    for (const Letter& l : w)
        out.push_back(Json{{"root", l.root}, {"exponent", l.exp}});
    return out;
}

inline Json relations_json(const RelationSet& rs) {
    Json gens = Json::array();
    for (const IVec& g : rs.generators) gens.push_back(g);
    Json rels = Json::array();
    for (const Relation& r : rs.rels)
        rels.push_back(Json{{"left", word_json(r.left)},
                            {"right", word_json(r.right)}});
    return Json{{"generators", gens}, {"relations", rels}};
}

inline Json report_json(const CubicalReport& r) {
    return Json{{"pass", r.pass},
                {"morphisms_checked", r.morphisms_checked},
                {"violations", r.violations}};
}

inline Json report_json(const ConditionReport& r) {
    return Json{{"pass", r.pass},
                {"sets_checked", r.sets_checked},
                {"violations", r.violations}};
}

inline Json report_json(const PolygonReport& r) {
    return Json{{"pass", r.pass},
                {"faces_checked", r.faces_checked},
                {"failures", r.failures}};
}

inline Json report_json(const RetractReport& r) {
    return Json{{"certified", r.certified},
                {"stages", r.stages},
                {"clusters", r.clusters},
                {"violations", r.violations}};
}

inline Json report_json(const FunctReport& r) {
    return Json{{"pass", r.pass},
                {"pairs_checked", r.pairs_checked},
                {"failures", r.failures}};
}

inline Json report_json(const FaithReport& r) {
    return Json{{"certified", r.certified},
                {"hom_sets_checked", r.hom_sets_checked},
                {"pairs_distinguished", r.pairs_distinguished},
                {"vacuous_hom_sets", r.vacuous_hom_sets},
                {"violations", r.violations}};
}

inline Json tube_json(const TubeReport& r) {
    Json w = Json::array();
    for (const auto& orbit : r.witnesses) w.push_back(orbit);
    return Json{{"ranks", r.ranks}, {"witnesses", w}};
}

inline Json verdict_json(const Verdict& v) {
    Json w = Json::array();
    for (const IVec& x : v.witness) w.push_back(x);
    return Json{{"status", status_name(v.status)},
                {"exit", v.exit_code()},
                {"type", v.type_name},
                {"scope", v.scope},
                {"witness", w},
                {"notes", v.notes},
                {"cubical", report_json(v.cubical)},
                {"condition_one", report_json(v.cond1)},
                {"condition_two", report_json(v.cond2)},
                {"faithful", v.faithful}};
}

// --- DOT emitters -----------------------------------------------------------
// Node IDs are the canonical keys, so reruns and re-exports agree byte for
// byte; labels carry the human form.

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string category_dot(const Category& c) {
    std::ostringstream os;
    os << "digraph category {\n";
    std::vector<std::pair<std::string, std::string>> nodes;
    for (const Wide& w : c.objects) nodes.emplace_back(w.key(), wide_str(w));
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [key, label] : nodes)
        os << "  \"" << dot_escape(key) << "\" [label=\"" << dot_escape(label)
           << "\"];\n";
    std::vector<std::string> edges;
    for (const Morph& m : c.morphisms) {
        std::string label = m.cluster.empty() ? "id" : cluster_str(m.cluster);
        edges.push_back("  \"" + dot_escape(m.source.key()) + "\" -> \"" +
                        dot_escape(m.target.key()) + "\" [label=\"" +
                        dot_escape(label) + "\"];\n");
    }
    std::sort(edges.begin(), edges.end());
    for (const std::string& e : edges) os << e;
    os << "}\n";
    return os.str();
}

inline std::string exchange_dot(const Wide& w) {
    if (w.truncated())
        throw DomainError("exchange graph requires a finite-type subcategory");
    ExchangeGraph g = build_exchange_graph(w);
    std::ostringstream os;
    os << "graph exchange {\n";
    std::vector<std::pair<std::string, std::string>> nodes;
    for (const Cluster& t : g.nodes)
        nodes.emplace_back(cluster_key(t), cluster_str(t));
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [key, label] : nodes)
        os << "  \"" << dot_escape(key) << "\" [label=\"" << dot_escape(label)
           << "\"];\n";
    std::set<std::pair<std::string, std::string>> edges;
    for (const Cluster& t : g.nodes)
        for (int k = 0; k < static_cast<int>(t.size()); ++k) {
            std::string a = cluster_key(t);
            std::string b = cluster_key(mutate(w, t, k).result);
            edges.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
        }
    for (const auto& [a, b] : edges)
        os << "  \"" << dot_escape(a) << "\" -- \"" << dot_escape(b) << "\";\n";
    os << "}\n";
    return os.str();
}

inline Json exchange_json(const Wide& w) {
    if (w.truncated())
        throw DomainError("exchange graph requires a finite-type subcategory");
    ExchangeGraph g = build_exchange_graph(w);
    Json nodes = Json::array();
    for (const Cluster& t : g.nodes) nodes.push_back(cluster_json(t));
    std::set<std::pair<int, int>> edges;
    for (const Cluster& t : g.nodes)
        for (int k = 0; k < static_cast<int>(t.size()); ++k) {
            int a = g.id_of(t);
            int b = g.id_of(mutate(w, t, k).result);
            edges.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
        }
    Json ej = Json::array();
    for (const auto& [a, b] : edges) ej.push_back(Json::array({a, b}));
    return Json{{"nodes", nodes}, {"edges", ej}};
}

inline Cluster cube_subset(const Morph& f, int mask) {
    Cluster s;
    for (int i = 0; i < f.rank(); ++i)
        if (mask & (1 << i)) s.push_back(f.cluster[i]);
    return s;
}

inline std::string cube_dot(Cmc& ctx, const Morph& f) {
    FactorizationCube cube = ctx.factorizations(f);
    int r = f.rank();
    std::ostringstream os;
    os << "digraph cube {\n";
    for (int mask = 0; mask < (1 << r); ++mask) {
        Cluster s = cube_subset(f, mask);
        std::string label = s.empty() ? "{}" : cluster_str(s);
        os << "  \"" << dot_escape(cluster_key(s)) << "\" [label=\""
           << dot_escape(label) << "\"];\n";
    }
    for (int mask = 0; mask < (1 << r); ++mask)
        for (int i = 0; i < r; ++i) {
            if (mask & (1 << i)) continue;
            os << "  \"" << dot_escape(cluster_key(cube_subset(f, mask)))
               << "\" -> \""
               << dot_escape(cluster_key(cube_subset(f, mask | (1 << i))))
               << "\" [label=\"" << dot_escape(object_str(f.cluster[i]))
               << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

inline Json cube_json(Cmc& ctx, const Morph& f) {
    FactorizationCube cube = ctx.factorizations(f);
    Json verts = Json::array();
    for (size_t mask = 0; mask < cube.first.size(); ++mask) {
        Cluster s = cube_subset(f, static_cast<int>(mask));
        Json so = Json::array();
        for (const ExcObj& o : s) so.push_back(object_json(o));
        verts.push_back(Json{{"subset", so},
                             {"first", morph_json(cube.first[mask])},
                             {"second", morph_json(cube.second[mask])}});
    }
    return Json{{"morphism", morph_json(f)}, {"vertices", verts}};
}

}  // namespace io
}  // namespace cmcat
