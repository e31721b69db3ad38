#include "adjsep/identification.hpp"

#include "adjsep/adjustment.hpp"
#include "adjsep/separation.hpp"
#include "internal.hpp"

namespace adjsep {

namespace {

std::string list(const MixedGraph& g, const NodeSet& s) {
    std::string out;
    for (const auto& n : g.sorted_names(s)) {
        if (!out.empty()) out += ",";
        out += n;
    }
    return out;
}

// "P(a | b, c)" with empty parts dropped; empty a reads as 1
std::string prob(const std::string& a, std::initializer_list<std::string> given) {
    if (a.empty()) return "";
    std::string cond;
    for (const auto& c : given) {
        if (c.empty()) continue;
        if (!cond.empty()) cond += ", ";
        cond += c;
    }
    return cond.empty() ? "P(" + a + ")" : "P(" + a + " | " + cond + ")";
}

std::string product(std::initializer_list<std::string> factors) {
    std::string out;
    for (const auto& f : factors) {
        if (f.empty()) continue;
        if (!out.empty()) out += " ";
        out += f;
    }
    return out.empty() ? "1" : out;
}

void check_pair(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) {
    require_nodes(g, X);
    require_nodes(g, Y);
    if (X.empty() || Y.empty()) throw InvalidQuery("X and Y must be nonempty");
    detail::require_disjoint(X, Y, "X and Y");
}

}  // namespace

const char* kind_name(FormulaKind k) {
    switch (k) {
        case FormulaKind::adjustment: return "adjustment";
        case FormulaKind::plain: return "plain";
        case FormulaKind::parent_adjustment: return "parent_adjustment";
        case FormulaKind::partition_product: return "partition_product";
        case FormulaKind::not_found: return "not_found";
    }
    return "not_found";
}

const char* label_name(Label l) {
    switch (l) {
        case Label::bc: return "BC";
        case Label::cbc: return "CBC";
        case Label::cbc_plus: return "CBC_PLUS";
        case Label::extended: return "EXTENDED";
        case Label::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

std::string render(const MixedGraph& g, const IdentFormula& f) {
    const std::string x = list(g, f.X), y = list(g, f.Y);
    switch (f.kind) {
        case FormulaKind::adjustment: {
            if (f.Z.empty()) return prob(y, {x});
            const std::string z = list(g, f.Z);
            return "sum_{" + z + "} " + prob(y, {x, z}) + " " + prob(z, {});
        }
        case FormulaKind::plain:
            return prob(y, {});
        case FormulaKind::parent_adjustment: {
            const std::string pa = list(g, f.y_pa), np = list(g, f.y_np);
            if (f.Z.empty()) return product({prob(pa, {}), prob(np, {x, pa})});
            const std::string z = list(g, f.Z);
            std::string joint = pa.empty() ? z : z + "," + pa;
            return "sum_{" + z + "} " + product({prob(joint, {}), prob(np, {x, z, pa})});
        }
        case FormulaKind::partition_product: {
            std::string out;
            for (const auto& name : g.sorted_names(f.Y)) {
                NodeId v = g.id(name);
                if (!out.empty()) out += " ";
                out += prob(name, {list(g, g.parents(v))});
            }
            return out;
        }
        case FormulaKind::not_found:
            return "not found";
    }
    return "not found";
}

bool plain_formula_applies(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) {
    check_pair(g, X, Y);
    return test_sep(transform(g, X, g.empty_set()), X, Y, g.empty_set());
}

std::optional<IdentFormula> parent_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y,
                                              const NodeSet& R) {
    check_pair(g, X, Y);
    require_nodes(g, R);
    if (X.size() != 1) throw InvalidQuery("parent adjustment needs a single exposure");
    const NodeSet pa = g.parents(X.first());
    if (!pa.is_subset_of(R)) return std::nullopt;
    IdentFormula f;
    f.kind = FormulaKind::parent_adjustment;
    f.X = X;
    f.Y = Y;
    f.y_pa = Y & pa;
    f.y_np = Y - pa;
    f.Z = pa - f.y_pa;
    return f;
}

IdentFormula partition_effect(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) {
    check_pair(g, X, Y);
    if ((X | Y) != g.all_nodes()) throw InvalidQuery("X and Y must cover every node");
    IdentFormula f;
    f.kind = FormulaKind::partition_product;
    f.X = X;
    f.Y = Y;
    f.empty_adjustment_valid = !g.children(Y).intersects(X);
    f.plain_applies = !g.children(X).intersects(Y);
    return f;
}

Classification classify(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& R,
                        bool extended) {
    require_dag(g);
    check_pair(g, X, Y);
    require_nodes(g, R);
    Classification c;
    c.formula.X = X;
    c.formula.Y = Y;
    if (auto z = pearl_backdoor_find(g, X, Y, R)) {
        c.label = Label::bc;
        c.formula.kind = FormulaKind::adjustment;
        c.formula.Z = *z;
        return c;
    }
    SepQuery q{X, Y, g.empty_set(), R};
    if (auto z = find_adjustment(g, q)) {
        c.label = Label::cbc;
        c.formula.kind = FormulaKind::adjustment;
        c.formula.Z = *z;
        return c;
    }
    if (plain_formula_applies(g, X, Y)) {
        c.label = Label::cbc_plus;
        c.formula.kind = FormulaKind::plain;
        return c;
    }
    if (extended) {
        if (X.size() == 1) {
            if (auto f = parent_adjustment(g, X, Y, R)) {
                c.label = Label::extended;
                c.formula = *f;
                return c;
            }
        }
        if ((X | Y) == g.all_nodes()) {
            c.label = Label::extended;
            c.formula = partition_effect(g, X, Y);
            return c;
        }
    }
    return c;
}

}  // namespace adjsep
