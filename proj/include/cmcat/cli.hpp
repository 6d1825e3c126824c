#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmcat/io.hpp"

namespace cmcat {

struct CommandConfig {
    std::string command;
    std::string quiver_path;
    Int bound = 8;
    Int budget = 100000;
    std::string format = "text";
    std::string what;      // export: category | exchange-graph | cube | verdict
    std::string cluster;   // export cube: the face, comma-separated objects
    std::string gamma;     // picture-group: partial cluster to evaluate
    bool verify = false;   // picture-group: run the verification reports
    std::string out_path;  // write here instead of stdout
};

namespace detail {

inline std::string dumps(const io::Json& j) { return j.dump(2) + "\n"; }

inline void require_format(const std::string& cmd, const std::string& fmt,
                           std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (fmt == a) return;
    throw DomainError("unsupported format for " + cmd + ": " + fmt);
}

inline std::string cmd_roots(const Algebra& a, const CommandConfig& cfg) {
    require_format("roots", cfg.format, {"text", "json"});
    if (a.rtype.tag == QType::Wild) throw DomainError("wild type rejected");
    if (cfg.format == "json")
        return dumps(io::Json{{"type", io::type_str(a.rtype.tag)},
                              {"bound", a.bound},
                              {"roots", a.exc_roots}});
    std::string s;
    for (const IVec& r : a.exc_roots) s += ivec_str(r) + "\n";
    return s;
}

inline std::string cmd_clusters(const Algebra& a, const CommandConfig& cfg) {
    require_format("clusters", cfg.format, {"text", "json"});
    Wide w = Wide::full(a);
    if (w.truncated())
        throw DomainError("cluster enumeration requires finite type");
    std::vector<Cluster> cs = enumerate_clusters(w);
    if (cfg.format == "json") {
        io::Json arr = io::Json::array();
        for (const Cluster& t : cs) arr.push_back(io::cluster_json(t));
        return dumps(io::Json{{"clusters", arr}});
    }
    std::string s;
    for (const Cluster& t : cs) s += io::cluster_str(t) + "\n";
    return s;
}

inline std::string cmd_category(const Algebra& a, const CommandConfig& cfg) {
    require_format("category", cfg.format, {"text", "json", "dot"});
    Cmc ctx(a);
    Category c = ctx.build_category();
    if (cfg.format == "json") return dumps(io::category_json(c));
    if (cfg.format == "dot") return io::category_dot(c);
    std::ostringstream os;
    os << "objects " << c.objects.size() << "\n";
    os << "morphisms " << c.morphisms.size() << "\n";
    for (size_t i = 0; i < c.objects.size(); ++i)
        os << "object " << io::wide_str(c.objects[i])
           << (c.complete[i] ? " complete" : " truncated") << "\n";
    for (const Morph& m : c.morphisms) os << "morphism " << m.key() << "\n";
    return os.str();
}

inline int cmd_check_cubical(const Algebra& a, const CommandConfig& cfg,
                             std::string& payload) {
    require_format("check-cubical", cfg.format, {"text", "json"});
    Cmc ctx(a);
    Category c = ctx.build_category();
    CubicalReport r = ctx.verify_cubical(c);
    if (cfg.format == "json") {
        payload = dumps(io::report_json(r));
    } else {
        std::ostringstream os;
        os << "cubical " << (r.pass ? "pass" : "fail") << "\n";
        os << "morphisms_checked " << r.morphisms_checked << "\n";
        for (const std::string& v : r.violations) os << "violation: " << v << "\n";
        payload = os.str();
    }
    return r.pass ? 0 : 1;
}

inline int cmd_picture_group(const Algebra& a, const CommandConfig& cfg,
                             std::string& payload) {
    require_format("picture-group", cfg.format, {"text", "json"});
    Cmc ctx(a);
    Picture pic(ctx);
    if (!cfg.gamma.empty()) {
        Cluster t = io::parse_cluster(a, cfg.gamma);
        Morph f = ctx.morphism(ctx.full(), t);
        GroupWord wd = pic.gamma(f);
        payload = cfg.format == "json" ? dumps(io::Json{{"word", io::word_json(wd)}})
                                       : word_str(wd) + "\n";
        return 0;
    }
    if (cfg.verify) {
        Category c = ctx.build_category();
        PolygonReport pg = pic.verify_polygons(ctx.full(), cfg.budget);
        FunctReport fr = pic.verify_functoriality(c, cfg.budget);
        RetractReport rr = pic.verify_retraction(ctx.full(), cfg.budget);
        FaithReport fa = pic.faithfulness(c, cfg.budget);
        bool ok = pg.pass && fr.pass && rr.certified && fa.certified;
        if (cfg.format == "json") {
            // per-pair items with the rewrite trace behind each Equal verdict
            io::Json items = io::Json::array();
            for (const Morph& f : c.morphisms)
                for (const Morph& g : c.morphisms) {
                    if (f.target.key() != g.source.key()) continue;
                    Morph gf = ctx.compose(f, g);
                    GroupWord lhs = pic.gamma(gf);
                    GroupWord rhs = word_mul(pic.gamma(f), pic.gamma(g));
                    WordEqual we =
                        word_equal(lhs, rhs, pic.rels(f.source), cfg.budget);
                    items.push_back(io::Json{{"pair", {f.key(), g.key()}},
                                             {"equal", we.equal},
                                             {"trace", we.trace}});
                }
            io::Json fj = io::report_json(fr);
            fj["items"] = items;
            payload = dumps(io::Json{{"polygons", io::report_json(pg)},
                                     {"functoriality", fj},
                                     {"retraction", io::report_json(rr)},
                                     {"faithfulness", io::report_json(fa)}});
        } else {
            std::ostringstream os;
            os << "polygons " << (pg.pass ? "pass" : "fail") << " faces_checked "
               << pg.faces_checked << "\n";
            for (const std::string& v : pg.failures) os << "  " << v << "\n";
            os << "functoriality " << (fr.pass ? "pass" : "fail")
               << " pairs_checked " << fr.pairs_checked << "\n";
            for (const std::string& v : fr.failures) os << "  " << v << "\n";
            os << "retraction " << (rr.certified ? "certified" : "uncertified")
               << " stages " << rr.stages << " clusters " << rr.clusters << "\n";
            for (const std::string& v : rr.violations) os << "  " << v << "\n";
            os << "faithfulness " << (fa.certified ? "certified" : "uncertified")
               << " hom_sets_checked " << fa.hom_sets_checked
               << " pairs_distinguished " << fa.pairs_distinguished
               << " vacuous " << fa.vacuous_hom_sets << "\n";
            for (const std::string& v : fa.violations) os << "  " << v << "\n";
            payload = os.str();
        }
        return ok ? 0 : 1;
    }
    const RelationSet& rs = pic.rels(ctx.full());
    if (cfg.format == "json") {
        payload = dumps(io::relations_json(rs));
    } else {
        std::ostringstream os;
        for (const IVec& g : rs.generators) os << "generator " << ivec_str(g) << "\n";
        for (const Relation& r : rs.rels)
            os << "relation " << word_str(r.left) << " = " << word_str(r.right)
               << "\n";
        payload = os.str();
    }
    return 0;
}

inline int cmd_check_cat0(const Quiver& q, const CommandConfig& cfg,
                          std::string& payload) {
    require_format("check-cat0", cfg.format, {"text", "json"});
    Verdict v = verdict(q, cfg.bound, cfg.budget);
    if (cfg.format == "json") {
        payload = dumps(io::verdict_json(v));
        return v.exit_code();
    }
    std::ostringstream os;
    os << "status " << status_name(v.status) << "\n";
    os << "type " << v.type_name << "\n";
    if (!v.scope.empty()) os << "scope " << v.scope << "\n";
    if (!v.witness.empty()) {
        os << "witness";
        for (const IVec& w : v.witness) os << " " << ivec_str(w);
        os << "\n";
    }
    if (v.cubical.morphisms_checked > 0)
        os << "cubical " << (v.cubical.pass ? "pass" : "fail")
           << " morphisms_checked " << v.cubical.morphisms_checked << "\n";
    if (v.cond1.sets_checked > 0)
        os << "condition_one " << (v.cond1.pass ? "pass" : "fail")
           << " sets_checked " << v.cond1.sets_checked << "\n";
    if (v.cond2.sets_checked > 0)
        os << "condition_two " << (v.cond2.pass ? "pass" : "fail")
           << " sets_checked " << v.cond2.sets_checked << "\n";
    if (v.status == Verdict::Status::CAT0 && v.scope == "full")
        os << "faithful " << (v.faithful ? "true" : "false") << "\n";
    for (const std::string& n : v.notes) os << "note: " << n << "\n";
    payload = os.str();
    return v.exit_code();
}

inline std::string cmd_export(const Quiver& q, const CommandConfig& cfg) {
    auto unsupported = [&]() {
        throw DomainError("unsupported export pair: " + cfg.what + " as " +
                          cfg.format);
    };
    if (cfg.what == "verdict") {
        if (cfg.format != "json") unsupported();
        return dumps(io::verdict_json(verdict(q, cfg.bound, cfg.budget)));
    }
    Algebra a = Algebra::build(q, cfg.bound);
    if (cfg.what == "category") {
        Cmc ctx(a);
        Category c = ctx.build_category();
        if (cfg.format == "json") return dumps(io::category_json(c));
        if (cfg.format == "dot") return io::category_dot(c);
        unsupported();
    }
    if (cfg.what == "exchange-graph") {
        Wide w = Wide::full(a);
        if (cfg.format == "json") return dumps(io::exchange_json(w));
        if (cfg.format == "dot") return io::exchange_dot(w);
        unsupported();
    }
    if (cfg.what == "cube") {
        if (cfg.cluster.empty())
            throw DomainError("cube export needs --cluster with a nonempty face");
        Cmc ctx(a);
        Morph f = ctx.morphism(ctx.full(), io::parse_cluster(a, cfg.cluster));
        if (cfg.format == "json") return dumps(io::cube_json(ctx, f));
        if (cfg.format == "dot") return io::cube_dot(ctx, f);
        unsupported();
    }
    throw DomainError("unknown export artifact: " + cfg.what);
}

}  // namespace detail

inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    if (cfg.bound < 1) throw DomainError("bound must be at least 1");
    if (cfg.budget < 1) throw DomainError("budget must be at least 1");
    Quiver q = io::load_quiver(cfg.quiver_path);
    std::string payload;
    int code = 0;
    if (cfg.command == "roots") {
        payload = detail::cmd_roots(Algebra::build(q, cfg.bound), cfg);
    } else if (cfg.command == "clusters") {
        payload = detail::cmd_clusters(Algebra::build(q, cfg.bound), cfg);
    } else if (cfg.command == "category") {
        payload = detail::cmd_category(Algebra::build(q, cfg.bound), cfg);
    } else if (cfg.command == "check-cubical") {
        code = detail::cmd_check_cubical(Algebra::build(q, cfg.bound), cfg, payload);
    } else if (cfg.command == "picture-group") {
        code = detail::cmd_picture_group(Algebra::build(q, cfg.bound), cfg, payload);
    } else if (cfg.command == "check-cat0") {
        code = detail::cmd_check_cat0(q, cfg, payload);
    } else if (cfg.command == "export") {
        payload = detail::cmd_export(q, cfg);
    } else {
        throw DomainError("unknown command: " + cfg.command);
    }
    if (cfg.out_path.empty())
        out << payload;
    else
        io::write_file(cfg.out_path, payload);
    return code;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"cluster morphism categories of acyclic quivers"};
    app.require_subcommand(1);
    CommandConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("quiver", cfg.quiver_path, "quiver JSON file")->required();
        sub->add_option("--bound", cfg.bound, "root entry bound for tame slices");
        sub->add_option("--budget", cfg.budget, "rewrite search budget");
        sub->add_option("--format", cfg.format, "text | json | dot")
            ->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_option("--out", cfg.out_path, "write output to this file");
        return sub;
    };
    add_common(app.add_subcommand("roots", "list the exceptional roots"));
    add_common(app.add_subcommand("clusters", "enumerate cluster-tilting sets"));
    add_common(app.add_subcommand("category", "build the cluster morphism category"));
    add_common(app.add_subcommand("check-cubical", "verify the cubical axioms"));
    CLI::App* pg =
        add_common(app.add_subcommand("picture-group", "picture group relations"));
    pg->add_option("--gamma", cfg.gamma,
                   "evaluate the group word of this partial cluster");
    pg->add_flag("--verify", cfg.verify,
                 "run the polygon, functoriality, retraction, and "
                 "faithfulness checks");
    add_common(app.add_subcommand("check-cat0", "decide CAT(0) with certificates"));
    CLI::App* ex = add_common(app.add_subcommand("export", "serialize an artifact"));
    ex->add_option("--what", cfg.what, "category | exchange-graph | cube | verdict")
        ->required()
        ->check(CLI::IsMember({"category", "exchange-graph", "cube", "verdict"}));
    ex->add_option("--cluster", cfg.cluster, "face of the cube to export");
    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 64;
    }
    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    try {
        return run(cfg, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 64;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    }
}

}  // namespace cmcat
