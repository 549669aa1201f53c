// Command line front end: validate, classify, ext, tor, resolve, suite, search, corpus, cache gc.
// Exit status: 0 success, 1 inconsistent suite, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sdclab/report.hpp"

using namespace sdclab;

namespace {

struct Options {
    std::string field = "32003";
    int window = 12;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string cache_dir;

    std::string ring;
    std::string complex;
    std::string against;
    std::string x, y;
    std::string suite;
    std::string question;
    std::string corpus = "standard";
    std::string out;
    int length = -1;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// A complex argument: a library name, inline json, or a path to a json document.
json complex_arg(const std::string& s) {
    if (!s.empty() && (s[0] == '{' || s[0] == '"')) {
        try {
            return json::parse(s);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("complex: ") + e.what());
        }
    }
    if (std::filesystem::is_regular_file(s)) return read_json(s);
    return json(s);
}

void write_out(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write '" + o.out + "'");
    f << text;
}

template <class F>
struct Session {
    F field;
    Context<F> ctx;
    ProdPtr<F> ring;
    Library<F> lib;
    json ring_doc;

    Session(F f, const Options& o) : field(f), ctx(f, o.window, o.seed) {
        if (!o.cache_dir.empty()) ctx.cache_dir = o.cache_dir;
    }
    void load_ring(const json& doc) {
        ring_doc = doc;
        ring = algebra_from_json(field, doc);
        lib = ring_library(ring, doc);
    }
    PObj<F> complex(const std::string& arg) { return complex_from_json(ring, complex_arg(arg), lib); }
};

std::string table_text(const char* what, const DimTable& t) {
    std::ostringstream o;
    o << "n\tdim " << what << "\n";
    for (int n = t.lo; n <= t.hi; ++n) o << n << "\t" << *t.at(n) << "\n";
    if (t.assumed) o << "(window)\n";
    return o.str();
}

template <class F>
int cmd_validate(Session<F>& s, const Options& o) {
    json out{{"field", s.field.spec().name()}, {"components", json::array()}};
    for (const auto& a : s.ring->comps)
        out["components"].push_back(json{{"dim", a->dim},
                                         {"embedding_dim", a->embedding_dim()},
                                         {"socle_dim", a->socle_dim()},
                                         {"gorenstein", is_gorenstein(*a)}});
    if (!o.complex.empty()) {
        auto x = s.complex(o.complex);
        json parts = json::array();
        for (const auto& p : x.parts) {
            const auto& h = hprof(s.ctx, p);
            json hs = json::array();
            for (int n = p->lo; n <= p->hi(); ++n) hs.push_back(h.dim(n));
            parts.push_back(json{{"lo", p->lo}, {"homology", hs}});
        }
        out["complex"] = parts;
    }
    if (o.format == "json") {
        write_out(o, out.dump(2) + "\n");
    } else {
        std::ostringstream t;
        t << "ring over " << out["field"].template get<std::string>() << " with " << s.ring->size() << " component(s)\n";
        int i = 1;
        for (const auto& c : out["components"])
            t << "  component " << i++ << ": dim " << c["dim"] << ", embedding dim " << c["embedding_dim"]
              << ", socle dim " << c["socle_dim"] << (c["gorenstein"].template get<bool>() ? ", Gorenstein" : "") << "\n";
        if (out.contains("complex")) t << "complex: valid\n";
        write_out(o, t.str());
    }
    return 0;
}

template <class F>
int cmd_classify(Session<F>& s, const Options& o) {
    auto& ctx = s.ctx;
    auto x = s.complex(o.complex);
    std::vector<std::pair<std::string, json>> rows;
    auto add = [&](const std::string& k, const Verdict& v) { rows.emplace_back(k, to_json(v)); };
    if (zero_component(ctx, x)) {
        add("nonzero on every component", Verdict::fails("complex is zero on a component"));
    } else {
        add("semidualizing", is_semidualizing(ctx, x));
        add("dualizing", is_dualizing(ctx, x));
        add("tilting", tilting(ctx, x));
    }
    rows.emplace_back("pd", p_pd(ctx, x).to_json());
    rows.emplace_back("id", p_id(ctx, x).to_json());
    json recog = json::array();
    for (const auto& p : x.parts) recog.push_back(recognize(ctx, p).label());
    rows.emplace_back("recognized", recog);
    if (x.size() == 1) {
        auto d = p_depth(ctx, x);
        rows.emplace_back("depth", d ? json(*d) : json("undetermined"));
    }
    if (!o.against.empty()) {
        auto c = s.complex(o.against);
        auto csd = sd(ctx, c);
        add("against is semidualizing", csd);
        if (!csd.is_fails()) {
            add("reflexive", is_reflexive(ctx, x, c));
            add("in Bass class", in_bass(ctx, x, c));
            add("in Auslander class", in_auslander(ctx, x, c));
            if (sd(ctx, x).is_holds()) add("equivalent up to shift", approx_equiv(ctx, x, c).verdict);
        }
    }
    if (o.format == "json") {
        json j = json::object();
        for (const auto& [k, v] : rows) j[k] = v;
        write_out(o, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream t;
    for (const auto& [k, v] : rows) {
        t << k << "\t";
        if (v.is_object() && v.contains("verdict")) {
            t << v["verdict"].template get<std::string>();
            if (v.contains("evidence")) t << " (" << v["evidence"].template get<std::string>() << ")";
            t << "\t" << v["reason"].template get<std::string>();
        } else {
            t << (v.is_string() ? v.template get<std::string>() : v.dump());
        }
        t << "\n";
    }
    write_out(o, t.str());
    return 0;
}

template <class F>
int cmd_table(Session<F>& s, const Options& o, bool ext) {
    auto x = s.complex(o.x), y = s.complex(o.y);
    auto t = ext ? p_ext_table(s.ctx, x, y) : p_tor_table(s.ctx, x, y);
    if (o.format == "json") write_out(o, t.to_json().dump(2) + "\n");
    else write_out(o, table_text(ext ? "Ext^n" : "Tor_n", t));
    return 0;
}

template <class F>
int cmd_resolve(Session<F>& s, const Options& o) {
    auto x = s.complex(o.complex);
    json parts = json::array();
    for (const auto& p : x.parts) {
        if (acyclic(s.ctx, p)) {
            parts.push_back(json{{"start", 0}, {"betti", json::array()}, {"terminated", true}});
            continue;
        }
        const int len = o.length >= 0 ? o.length : s.ctx.window;
        auto r = resolve(s.ctx, p, p->lo + len);
        std::vector<int> b;
        for (int n = r->start; n <= std::min(r->top(), p->lo + len); ++n) b.push_back(r->b(n));
        parts.push_back(json{{"start", r->start}, {"betti", b}, {"terminated", r->terminated}});
    }
    if (o.format == "json") {
        write_out(o, parts.dump(2) + "\n");
        return 0;
    }
    std::ostringstream t;
    int i = 1;
    for (const auto& p : parts) {
        t << "component " << i++ << ": betti from degree " << p["start"] << ":";
        for (const auto& b : p["betti"]) t << " " << b;
        t << (p["terminated"].template get<bool>() ? " (terminates)" : " ...") << "\n";
    }
    write_out(o, t.str());
    return 0;
}

template <class F>
Corpus<F> load_corpus(const F& f, const Options& o) {
    if (o.corpus == "standard") return standard_corpus(f);
    return corpus_from_json(f, read_json(o.corpus));
}

std::string report_format(const Options& o) { return o.format == "text" ? "markdown" : o.format; }

template <class F>
int cmd_suite(Session<F>& s, const Options& o) {
    auto corpus = load_corpus(s.field, o);
    std::vector<std::string> ids = o.suite == "all" ? all_suites() : std::vector<std::string>{o.suite};
    bool ok = true;
    std::string text;
    if (ids.size() == 1) {
        auto rep = run_suite(ids[0], s.ctx, corpus);
        ok = rep.consistent;
        text = emit_report(rep, report_format(o));
    } else {
        json all = json::array();
        for (const auto& id : ids) {
            auto rep = run_suite(id, s.ctx, corpus);
            ok = ok && rep.consistent;
            if (report_format(o) == "json") all.push_back(report_json(rep));
            else text += emit_report(rep, "markdown") + "\n";
        }
        if (report_format(o) == "json") text = all.dump(2) + "\n";
    }
    write_out(o, text);
    if (!ok) std::cerr << "inconsistent verdicts found\n";
    return ok ? 0 : 1;
}

template <class F>
int cmd_search(Session<F>& s, const Options& o) {
    auto corpus = load_corpus(s.field, o);
    write_out(o, emit_report(search_questions(o.question, s.ctx, corpus), report_format(o)));
    return 0;
}

template <class F>
int cmd_corpus(Session<F>& s, const Options& o) {
    write_out(o, corpus_to_json(load_corpus(s.field, o)).dump(2) + "\n");
    return 0;
}

template <class F>
int dispatch(F f, const std::string& cmd, const Options& o, const std::optional<json>& ring_doc) {
    Session<F> s(f, o);
    if (ring_doc) s.load_ring(*ring_doc);
    if (cmd == "validate") return cmd_validate(s, o);
    if (cmd == "classify") return cmd_classify(s, o);
    if (cmd == "ext") return cmd_table(s, o, true);
    if (cmd == "tor") return cmd_table(s, o, false);
    if (cmd == "resolve") return cmd_resolve(s, o);
    if (cmd == "suite") return cmd_suite(s, o);
    if (cmd == "search") return cmd_search(s, o);
    if (cmd == "corpus") return cmd_corpus(s, o);
    throw InputError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sdclab: semidualizing complexes over finite-dimensional local algebras"};
    app.require_subcommand(1);
    Options o;
    std::map<CLI::App*, std::pair<CLI::Option*, CLI::Option*>> window_seed;
    auto global = [&](CLI::App* sub) {
        sub->add_option("--field", o.field, "q or a prime (default 32003)")->envname("SDCLAB_FIELD");
        auto w = sub->add_option("--window", o.window, "verdict window")->envname("SDCLAB_WINDOW")->check(CLI::Range(4, 64));
        auto sd = sub->add_option("--seed", o.seed, "random seed")->envname("SDCLAB_SEED");
        window_seed[sub] = {w, sd};
        sub->add_option("--format", o.format, "text, json or markdown")
            ->envname("SDCLAB_FORMAT")
            ->check(CLI::IsMember({"text", "json", "markdown"}));
        sub->add_option("--cache-dir", o.cache_dir, "resolution cache directory")->envname("SDCLAB_CACHE_DIR");
        sub->add_option("--out", o.out, "write output to a file")->envname("SDCLAB_OUT");
    };
    auto ring_opt = [&](CLI::App* sub) {
        sub->add_option("--ring", o.ring, "algebra description (json file)")->required()->envname("SDCLAB_RING");
    };

    auto validate = app.add_subcommand("validate", "check an algebra (and optionally a complex) description");
    global(validate);
    ring_opt(validate);
    validate->add_option("--complex", o.complex, "complex: name, json or file")->envname("SDCLAB_COMPLEX");

    auto classify = app.add_subcommand("classify", "verdict table for one complex");
    global(classify);
    ring_opt(classify);
    classify->add_option("--complex", o.complex, "complex: name, json or file")->required()->envname("SDCLAB_COMPLEX");
    classify->add_option("--against", o.against, "a semidualizing complex C")->envname("SDCLAB_AGAINST");

    CLI::App* tables[2];
    const char* tnames[2] = {"ext", "tor"};
    for (int i = 0; i < 2; ++i) {
        tables[i] = app.add_subcommand(tnames[i], i == 0 ? "dimensions of Ext^n(X, Y)" : "dimensions of Tor_n(X, Y)");
        global(tables[i]);
        ring_opt(tables[i]);
        tables[i]->add_option("--x", o.x, "first argument")->required()->envname("SDCLAB_X");
        tables[i]->add_option("--y", o.y, "second argument")->required()->envname("SDCLAB_Y");
    }

    auto resolve_cmd = app.add_subcommand("resolve", "Betti numbers of a minimal free resolution");
    global(resolve_cmd);
    ring_opt(resolve_cmd);
    resolve_cmd->add_option("--complex", o.complex, "complex: name, json or file")->required()->envname("SDCLAB_COMPLEX");
    resolve_cmd->add_option("--length", o.length, "number of degrees (default: window)")->envname("SDCLAB_LENGTH");

    auto suite = app.add_subcommand("suite", "run a theorem suite over a corpus");
    global(suite);
    std::vector<std::string> suite_ids = all_suites();
    suite_ids.push_back("all");
    suite_ids.push_back("empty");
    suite->add_option("id", o.suite, "suite id")->required()->check(CLI::IsMember(suite_ids));
    suite->add_option("--corpus", o.corpus, "standard or a corpus json file")->envname("SDCLAB_CORPUS");

    auto search = app.add_subcommand("search", "look for counterexamples to an open question");
    global(search);
    search->add_option("question", o.question, "tach03a|tach03b|tach03c|tpq02|tpq01|moretpq ...")->required();
    search->add_option("--corpus", o.corpus, "standard or a corpus json file")->envname("SDCLAB_CORPUS");

    auto corpus = app.add_subcommand("corpus", "print the corpus");
    global(corpus);
    corpus->add_option("--corpus", o.corpus, "standard or a corpus json file")->envname("SDCLAB_CORPUS");

    auto cache = app.add_subcommand("cache", "resolution cache maintenance");
    cache->require_subcommand(1);
    auto gc = cache->add_subcommand("gc", "remove stale or corrupt cache records");
    gc->add_option("--cache-dir", o.cache_dir, "resolution cache directory")->required()->envname("SDCLAB_CACHE_DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gc->parsed()) {
            auto rep = cache_gc(o.cache_dir);
            std::cout << "kept " << rep.kept << ", removed " << rep.removed.size() << "\n";
            for (const auto& r : rep.removed) std::cout << "  " << r << "\n";
            return 0;
        }
        std::string cmd;
        CLI::App* sub = nullptr;
        for (auto* a : app.get_subcommands()) sub = a, cmd = a->get_name();

        std::optional<json> ring_doc;
        FieldSpec field = parse_field_name(o.field);
        if (!o.ring.empty()) {
            ring_doc = read_json(o.ring);
            field = algebra_field(*ring_doc, field);
        } else if (o.corpus != "standard" && (cmd == "suite" || cmd == "search" || cmd == "corpus")) {
            const json doc = read_json(o.corpus);
            field = corpus_field(doc, field);
            // Window and seed from the corpus unless given explicitly.
            const auto [w, sd] = window_seed.at(sub);
            if (doc.contains("window") && w->count() == 0) o.window = doc.at("window").get<int>();
            if (doc.contains("seed") && sd->count() == 0) o.seed = doc.at("seed").get<std::uint64_t>();
            if (o.window < 4) throw InputError("corpus: window must be at least 4");
        }
        if (field.is_rational()) return dispatch(Rationals{}, cmd, o, ring_doc);
        return dispatch(PrimeField{field.p}, cmd, o, ring_doc);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const AlgebraError& e) {
        std::cerr << "invalid algebra: " << e.what() << "\n";
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
    }
    return 2;
}
