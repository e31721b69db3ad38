#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "adjsep/adjustment.hpp"
#include "adjsep/basis.hpp"
#include "adjsep/graph_io.hpp"
#include "adjsep/harness.hpp"
#include "adjsep/identification.hpp"
#include "adjsep/mag.hpp"

namespace adjsep::cli {

namespace {

using json = nlohmann::json;

// exit 1 from inside an action
struct NotFound {};

struct Options {
    std::string graph;
    std::optional<std::string> x, y, i, z, observed, latent;
    std::string cost;
    std::optional<std::size_t> limit;
    std::string format;
    std::string minimality = "none";
    bool extended = false;

    std::string n = "10", l = "2", k = "1";
    double p = 0;
    std::size_t instances = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool no_timing = false;
    std::size_t mag_latent_max_n = 0;
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ',')) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

class Session {
public:
    Session(const Options& o, std::istream& in, std::ostream& out, std::size_t* pulled)
        : o_(o), in_(in), out_(out), pulled_(pulled) {}

    void load() {
        if (o_.graph.empty()) throw InvalidQuery("--graph is required");
        doc_ = o_.graph == "-" ? parse_graph(in_) : read_graph_file(o_.graph);
        if (o_.observed && o_.latent) throw InvalidQuery("--observed and --latent are mutually exclusive");
    }

    const MixedGraph& g() const { return doc_.graph; }
    const GraphDocument& doc() const { return doc_; }

    NodeSet nodes(const std::optional<std::string>& flag, const NodeSet& fallback) const {
        if (!flag) return fallback;
        NodeSet s = g().empty_set();
        for (const auto& name : split(*flag)) s.insert(g().id(name));
        return s;
    }

    NodeSet X() const { return required(nodes(o_.x, doc_.exposure), "-x"); }
    NodeSet Y() const { return required(nodes(o_.y, doc_.outcome), "-y"); }
    NodeSet I() const { return nodes(o_.i, doc_.context); }
    NodeSet Z() const { return nodes(o_.z, g().empty_set()); }
    bool has_z() const { return o_.z.has_value(); }

    NodeSet latent() const {
        if (o_.observed) return g().all_nodes() - nodes(o_.observed, g().empty_set());
        return nodes(o_.latent, doc_.latent);
    }
    NodeSet R() const { return g().all_nodes() - latent(); }

    Minimality minimality() const {
        if (o_.minimality == "none") return Minimality::none;
        if (o_.minimality == "i") return Minimality::i_minimal;
        return Minimality::strong_minimal;
    }

    // unlisted nodes of R cost 1, nodes outside R are never chosen
    CostFn cost(const NodeSet& R) const {
        CostFn c = CostFn::unit(R);
        if (o_.cost.empty()) return c;
        std::ifstream f(o_.cost);
        if (!f) throw Error("cannot open cost file '" + o_.cost + "'");
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream ss(line);
            std::string name, w;
            if (!(ss >> name)) continue;
            if (!(ss >> w)) throw ParseError(lineno, "expected: <node> <weight>");
            NodeId v = g().id(name);
            if (!R.contains(v)) continue;
            if (w == "inf") {
                c.set(v, CostFn::infinite);
                continue;
            }
            double d;
            try {
                std::size_t used = 0;
                d = std::stod(w, &used);
                if (used != w.size()) throw std::invalid_argument(w);
            } catch (const std::logic_error&) {
                throw ParseError(lineno, "bad weight '" + w + "' for node '" + name + "'");
            }
            c.set(v, CostFn::from_double(d));
        }
        return c;
    }

    std::string fmt(const char* fallback = "json") const { return o_.format.empty() ? fallback : o_.format; }

    json set_json(const NodeSet& s) const { return g().sorted_names(s); }

    std::string set_text(const NodeSet& s, const char* sep) const {
        std::string out;
        for (const auto& n : g().sorted_names(s)) {
            if (!out.empty()) out += sep;
            out += n;
        }
        return out;
    }

    void emit_bool(bool b) const {
        if (fmt() == "json") out_ << json(b).dump() << '\n';
        else out_ << (b ? "true" : "false") << '\n';
    }

    void emit_set(const std::optional<NodeSet>& s) const {
        const auto f = fmt();
        if (f == "json") out_ << (s ? set_json(*s) : json(nullptr)).dump() << '\n';
        else if (!s) out_ << (f == "text" ? "none\n" : "");
        else if (f == "text") out_ << "{" << set_text(*s, ", ") << "}\n";
        else out_ << set_text(*s, ",") << '\n';
        if (!s) throw NotFound{};
    }

    void emit_stream(SepStream stream) const {
        const std::size_t cap = o_.limit.value_or(std::numeric_limits<std::size_t>::max());
        auto sets = stream.take(cap);
        if (pulled_) *pulled_ = stream.emitted();
        const auto f = fmt();
        if (f == "json") {
            json arr = json::array();
            for (const auto& s : sets) arr.push_back(set_json(s));
            out_ << arr.dump() << '\n';
            return;
        }
        for (const auto& s : sets) {
            if (f == "text") out_ << "{" << set_text(s, ", ") << "}\n";
            else out_ << set_text(s, ",") << '\n';
        }
    }

    void emit_graph(const MixedGraph& m, const NodeSet& latent) const {
        if (fmt() != "json") {
            GraphDocument d{m, latent, m.empty_set(), m.empty_set(), m.empty_set()};
            out_ << write_graph(d);
            return;
        }
        json edges = json::array();
        for (const auto& e : m.edges()) {
            std::string a = m.name(e.a), b = m.name(e.b), op;
            if (e.undirected()) op = "--";
            else if (e.bidirected()) op = "<->";
            else if (e.at_b == Mark::arrow) op = "->";
            else {
                std::swap(a, b);
                op = "->";
            }
            edges.push_back({a, op, b});
        }
        out_ << json{{"nodes", m.names()}, {"edges", edges}, {"latent", m.sorted_names(latent)}}.dump() << '\n';
    }

    std::ostream& out() const { return out_; }
    const Options& opts() const { return o_; }

private:
    NodeSet required(NodeSet s, const char* flag) const {
        if (s.empty()) throw InvalidQuery(std::string("missing or empty ") + flag);
        return s;
    }

    const Options& o_;
    std::istream& in_;
    std::ostream& out_;
    std::size_t* pulled_;
    GraphDocument doc_;
};

void require_ag(const MixedGraph& g) {
    auto rep = validate(g, GraphClass::ag);
    if (!rep.ok()) throw InvalidGraph("not an ancestral graph: " + rep.violations.front().message);
}

Objective cost_objective(const Session& s) {
    return s.minimality() == Minimality::strong_minimal ? Objective::strong_minimum : Objective::i_minimum;
}

void sep_command(Session& s, const std::string& verb) {
    s.load();
    require_ag(s.g());
    const NodeSet X = s.X(), Y = s.Y(), I = s.I(), R = s.R();
    const SepQuery q{X, Y, I, R};
    if (verb == "test") {
        const NodeSet Z = s.Z();
        switch (s.minimality()) {
            case Minimality::none: return s.emit_bool(test_sep(s.g(), X, Y, Z));
            case Minimality::i_minimal: return s.emit_bool(test_min_sep(s.g(), X, Y, Z, I, R));
            case Minimality::strong_minimal:
                return s.emit_bool(test_min_sep(s.g(), X, Y, Z, s.g().empty_set(), R));
        }
    }
    if (verb == "find") return s.emit_set(find_sep(s.g(), q));
    if (verb == "find-min") return s.emit_set(find_min_sep(s.g(), q));
    if (verb == "find-min-cost") {
        const NodeSet r = normalize(s.g(), q).R;
        return s.emit_set(find_min_cost_sep(s.g(), q, s.cost(r), cost_objective(s)));
    }
    if (verb == "list") return s.emit_stream(list_sep(s.g(), q));
    if (verb == "list-min") return s.emit_stream(list_min_sep(s.g(), q));
}

// shared by adj and mag adj once the context is built
template <class Ctx>
void adjust(Session& s, const Ctx& ctx, const std::string& verb) {
    const NodeSet I = s.I(), R = s.R();
    if (verb == "test") return s.emit_bool(ctx.test(s.Z(), s.minimality(), I));
    if (verb == "find") return s.emit_set(ctx.find(I, R, Objective::any));
    if (verb == "find-min") return s.emit_set(ctx.find(I, R, Objective::i_minimal));
    if (verb == "find-min-cost") {
        const NodeSet X = s.X(), Y = s.Y();
        CostFn c = s.cost(R - (X | Y));
        return s.emit_set(ctx.find(I, R, cost_objective(s), &c));
    }
    if (verb == "list") return s.emit_stream(ctx.enumerate(I, R, false));
    if (verb == "list-min") return s.emit_stream(ctx.enumerate(I, R, true));
}

void adj_command(Session& s, const std::string& verb) {
    s.load();
    require_dag(s.g());
    const NodeSet X = s.X(), Y = s.Y();
    if (verb == "backdoor") {
        if (s.has_z()) return s.emit_bool(pearl_backdoor_test(s.g(), X, Y, s.Z()));
        return s.emit_set(pearl_backdoor_find(s.g(), X, Y, s.R()));
    }
    AdjustmentContext ctx(s.g(), X, Y);
    adjust(s, ctx, verb);
}

void mag_command(Session& s, const std::string& verb) {
    s.load();
    if (verb == "from-dag") {
        const NodeSet L = s.latent();
        MixedGraph m = dag_to_mag(s.g(), L);
        return s.emit_graph(m, m.empty_set());
    }
    if (verb == "canonical") {
        require_mag(s.g());
        auto c = canonical_dag(s.g());
        return s.emit_graph(c.dag, c.latent);
    }
    if (verb == "amenable") {
        require_mag(s.g());
        return s.emit_bool(test_amenability(s.g(), s.X(), s.Y()));
    }
    MagAdjustment m(s.g(), s.X(), s.Y());
    adjust(s, m, verb);
}

void ident_command(Session& s) {
    s.load();
    const NodeSet X = s.X(), Y = s.Y();
    auto c = classify(s.g(), X, Y, s.R(), s.opts().extended);
    const auto& f = c.formula;
    const std::string text = render(s.g(), f);
    const auto fm = s.fmt();
    if (fm == "json") {
        json j{{"label", label_name(c.label)}, {"kind", kind_name(f.kind)}, {"formula", text}};
        if (f.kind == FormulaKind::adjustment) j["set"] = s.set_json(f.Z);
        if (f.kind == FormulaKind::parent_adjustment) {
            j["y_pa"] = s.set_json(f.y_pa);
            j["y_np"] = s.set_json(f.y_np);
            j["z"] = s.set_json(f.Z);
        }
        if (f.kind == FormulaKind::partition_product) {
            j["empty_adjustment_valid"] = f.empty_adjustment_valid;
            j["plain_applies"] = f.plain_applies;
        }
        s.out() << j.dump() << '\n';
    } else if (fm == "csv") {
        s.out() << "label,kind,formula\n" << label_name(c.label) << "," << kind_name(f.kind) << ",\"" << text << "\"\n";
    } else {
        s.out() << label_name(c.label) << ": " << text << '\n';
    }
}

void basis_command(Session& s, const std::string& verb) {
    s.load();
    if (verb == "stats") {
        auto p = parental_basis(s.g());
        auto sp = sparse_basis(s.g());
        const std::size_t pt = total_conditioning(p), st = total_conditioning(sp);
        const auto fm = s.fmt();
        if (fm == "json")
            s.out() << json{{"claims", p.size()}, {"parental_total", pt}, {"sparse_total", st}}.dump() << '\n';
        else if (fm == "csv")
            s.out() << "claims,parental_total,sparse_total\n" << p.size() << "," << pt << "," << st << '\n';
        else
            s.out() << "claims " << p.size() << "\nparental_total " << pt << "\nsparse_total " << st << '\n';
        return;
    }
    auto claims = verb == "parental" ? parental_basis(s.g()) : sparse_basis(s.g());
    const auto fm = s.fmt();
    const MixedGraph& g = s.g();
    if (fm == "json") {
        json arr = json::array();
        for (const auto& c : claims) arr.push_back({{"i", g.name(c.i)}, {"j", g.name(c.j)}, {"z", s.set_json(c.Z)}});
        s.out() << arr.dump() << '\n';
    } else if (fm == "csv") {
        s.out() << "i,j,z\n";
        for (const auto& c : claims) s.out() << g.name(c.i) << "," << g.name(c.j) << "," << s.set_text(c.Z, ";") << '\n';
    } else {
        for (const auto& c : claims)
            s.out() << g.name(c.i) << " _||_ " << g.name(c.j) << " | " << s.set_text(c.Z, ", ") << '\n';
    }
}

template <class T>
std::vector<T> numbers(const std::string& flag, const std::string& s) {
    std::vector<T> out;
    for (const auto& part : split(s)) {
        try {
            std::size_t used = 0;
            double d = std::stod(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            if constexpr (std::is_integral_v<T>) {
                if (d < 0 || d != static_cast<double>(static_cast<T>(d))) throw std::invalid_argument(part);
            }
            out.push_back(static_cast<T>(d));
        } catch (const std::logic_error&) {
            throw InvalidConfig(flag + ": bad value '" + part + "'");
        }
    }
    if (out.empty()) throw InvalidConfig(flag + ": no values");
    return out;
}

void bench_command(Session& s, const std::string& verb) {
    const Options& o = s.opts();
    ExperimentConfig base;
    base.mode = verb == "dag" ? Mode::dag_ident : verb == "mag" ? Mode::mag_ident : Mode::basis_sets;
    base.p_unobserved = o.p;
    base.instances = o.instances;
    base.seed = o.seed;
    base.threads = o.threads;
    base.timing = !o.no_timing;
    base.extended = o.extended;
    base.mag_latent_max_n = o.mag_latent_max_n;
    std::vector<ExperimentConfig> cfgs;
    for (auto n : numbers<std::size_t>("--n", o.n))
        for (auto l : numbers<double>("--l", o.l))
            for (auto k : numbers<std::size_t>("--k", o.k)) {
                ExperimentConfig c = base;
                c.n = n;
                c.l = l;
                c.k = k;
                validate(c);
                cfgs.push_back(c);
            }
    const auto fm = s.fmt("csv");
    json arr = json::array();
    if (fm != "json") s.out() << csv_header(base) << '\n';
    for (const auto& c : cfgs) {
        auto r = run_experiment(c);
        if (fm != "json") {
            s.out() << csv_row(r) << '\n';
            continue;
        }
        json j{{"mode", mode_name(c.mode)}, {"n", c.n}, {"l", c.l}, {"instances", c.instances}, {"seed", c.seed}};
        if (c.mode == Mode::basis_sets) {
            j["parental_total"] = r.parental_total;
            j["sparse_total"] = r.sparse_total;
            j["mean_reduction"] = r.mean_reduction;
            j["sparse_le_parental"] = r.sparse_le_parental;
        } else {
            j["k"] = c.k;
            j["p_unobserved"] = c.p_unobserved;
            j["bc"] = r.bc;
            j["cbc"] = r.cbc;
            j["cbc_plus"] = r.cbc_plus;
            if (c.extended) j["extended"] = r.extended;
            if (c.mode == Mode::mag_ident) {
                j["mag_ee"] = r.mag_ee;
                j["mag_el"] = r.mag_el_skipped ? json(nullptr) : json(r.mag_el);
            }
        }
        j["t_mean_us"] = r.t_mean_us;
        j["t_p99_us"] = r.t_p99_us;
        arr.push_back(j);
    }
    if (fm == "json") s.out() << arr.dump() << '\n';
}

void add_format(CLI::App* app, Options& o) {
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_graph(CLI::App* app, Options& o) {
    app->add_option("--graph", o.graph, "Graph file ('-' for stdin)")->required();
    app->add_option("--observed", o.observed, "Observed nodes (overrides latent tags)");
    app->add_option("--latent", o.latent, "Latent nodes (overrides latent tags)");
    add_format(app, o);
}

void add_query(CLI::App* app, Options& o, bool with_z, bool with_cost, bool with_limit) {
    add_graph(app, o);
    app->add_option("-x", o.x, "Exposures / first set, comma separated");
    app->add_option("-y", o.y, "Outcomes / second set, comma separated");
    app->add_option("-i", o.i, "Nodes every answer must contain");
    if (with_z) app->add_option("-z", o.z, "Candidate set");
    if (with_cost) app->add_option("--cost", o.cost, "Cost file with lines '<node> <weight>'");
    if (with_limit) app->add_option("--limit", o.limit, "Stop after N sets");
    app->add_option("--minimality", o.minimality, "none, i or strong")
        ->check(CLI::IsMember({"none", "i", "strong"}));
}

using Action = std::function<void(Session&)>;

void add_task_verbs(CLI::App* parent, Options& o, Action& action,
                    std::function<void(Session&, const std::string&)> handler) {
    struct Verb {
        const char* name;
        const char* help;
        bool z, cost, limit;
    };
    std::vector<Verb> verbs = {
        {"test", "Test a candidate set (-z)", true, false, false},
        {"find", "Find a set", false, false, false},
        {"find-min", "Find an I-minimal set", false, false, false},
        {"find-min-cost", "Find a minimum-cost set", false, true, false},
        {"list", "Enumerate all sets", false, false, true},
        {"list-min", "Enumerate all I-minimal sets", false, false, true},
    };
    for (const auto& v : verbs) {
        auto* sub = parent->add_subcommand(v.name, v.help);
        add_query(sub, o, v.z, v.cost, v.limit);
        std::string name = v.name;
        sub->callback([&action, handler, name] { action = [handler, name](Session& s) { handler(s, name); }; });
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        std::size_t* pulled) {
    Options o;
    Action action;
    CLI::App app{"Separators and covariate adjustment in DAGs, ancestral graphs and MAGs", "adjsep"};
    app.require_subcommand(1);

    auto* sep = app.add_subcommand("sep", "m-separation tasks")->require_subcommand(1);
    add_task_verbs(sep, o, action, sep_command);

    auto* adj = app.add_subcommand("adj", "Adjustment in DAGs")->require_subcommand(1);
    add_task_verbs(adj, o, action, adj_command);
    {
        auto* bd = adj->add_subcommand("backdoor", "Pearl's back-door criterion (test with -z, else find)");
        add_query(bd, o, true, false, false);
        bd->callback([&] { action = [](Session& s) { adj_command(s, "backdoor"); }; });
    }

    auto* mag = app.add_subcommand("mag", "Adjustment and conversions for MAGs")->require_subcommand(1);
    {
        auto* am = mag->add_subcommand("amenable", "Adjustment amenability");
        add_query(am, o, false, false, false);
        am->callback([&] { action = [](Session& s) { mag_command(s, "amenable"); }; });
        auto* madj = mag->add_subcommand("adj", "Adjustment in a MAG")->require_subcommand(1);
        add_task_verbs(madj, o, action, mag_command);
        auto* fd = mag->add_subcommand("from-dag", "MAG of a DAG with latent nodes");
        add_graph(fd, o);
        fd->callback([&] { action = [](Session& s) { mag_command(s, "from-dag"); }; });
        auto* cd = mag->add_subcommand("canonical", "Canonical DAG of a MAG");
        add_graph(cd, o);
        cd->callback([&] { action = [](Session& s) { mag_command(s, "canonical"); }; });
    }

    auto* ident = app.add_subcommand("ident", "Identification beyond adjustment")->require_subcommand(1);
    {
        auto* cl = ident->add_subcommand("classify", "Strongest of BC, CBC, CBC_PLUS");
        add_query(cl, o, false, false, false);
        cl->add_flag("--extended", o.extended, "Also try parent adjustment and the partition formula");
        cl->callback([&] { action = [](Session& s) { ident_command(s); }; });
    }

    auto* basis = app.add_subcommand("basis", "Basis sets for model checking")->require_subcommand(1);
    for (const char* verb : {"parental", "sparse", "stats"}) {
        auto* b = basis->add_subcommand(verb, std::string("Basis set: ") + verb);
        add_graph(b, o);
        std::string name = verb;
        b->callback([&, name] { action = [name](Session& s) { basis_command(s, name); }; });
    }

    auto* bench = app.add_subcommand("bench", "Random-instance experiments")->require_subcommand(1);
    for (const char* verb : {"dag", "mag", "basis"}) {
        auto* b = bench->add_subcommand(verb, std::string("Experiment: ") + verb);
        b->add_option("--n", o.n, "Node counts, comma separated");
        b->add_option("--l", o.l, "Expected neighbour counts, comma separated");
        b->add_option("--instances", o.instances, "Instances per configuration");
        b->add_option("--seed", o.seed, "Master seed");
        b->add_option("--threads", o.threads, "Worker threads");
        b->add_flag("--no-timing", o.no_timing, "Write timing columns as 0");
        add_format(b, o);
        if (std::string(verb) != "basis") {
            b->add_option("--k", o.k, "|X| = |Y|, comma separated");
            b->add_option("--p", o.p, "Probability of a node being unobserved")->check(CLI::Range(0.0, 1.0));
            b->add_flag("--extended", o.extended, "Count parent adjustment and partition cases");
        }
        if (std::string(verb) == "mag")
            b->add_option("--mag-latent-max-n", o.mag_latent_max_n, "Skip MAG conversion above this n (0: never)");
        std::string name = verb;
        b->callback([&, name] { action = [name](Session& s) { bench_command(s, name); }; });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Session session(o, in, out, pulled);
    try {
        action(session);
    } catch (const NotFound&) {
        return 1;
    } catch (const UnknownNode& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace adjsep::cli
