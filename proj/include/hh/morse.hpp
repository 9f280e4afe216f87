#pragma once

// Algebraic discrete Morse theory over a graded digraph: matching
// validation, zig-zag path sums (reduced differential), the transfer map h
// and path enumeration. Graphs may be materialized complexes or lazy
// neighbor generators.

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/coeff.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Weights

template <class W>
struct weight_traits;

template <>
struct weight_traits<Integer> {
    static Integer one() { return 1; }
    static bool invertible(const Integer& w) { return w == 1 || w == -1; }
    static Integer inverse(const Integer& w) { return coeff_traits<Integer>::inverse(w); }
};

template <>
struct weight_traits<Rational> {
    static Rational one() { return 1; }
    static bool invertible(const Rational& w) { return sgn(w) != 0; }
    static Rational inverse(const Rational& w) { return coeff_traits<Rational>::inverse(w); }
};

template <std::uint32_t P>
struct weight_traits<Zmod<P>> {
    static Zmod<P> one() { return 1; }
    static bool invertible(Zmod<P> w) { return w.value() != 0; }
    static Zmod<P> inverse(Zmod<P> w) { return w.inverse(); }
};

/// u in A^e is a unit iff its scalar part is a unit; the rest is nilpotent.
template <class T>
struct weight_traits<EnvElement<T>> {
    static EnvElement<T> one() { return env_one<T>(); }
    static bool invertible(const EnvElement<T>& u) { return coeff_traits<T>::is_unit(augmentation(u)); }

    static EnvElement<T> inverse(const EnvElement<T>& u)
    {
        T a = augmentation(u);
        if (!coeff_traits<T>::is_unit(a)) {
            throw std::domain_error("A^e element " + to_string(u) + " is not invertible");
        }
        T a_inv = coeff_traits<T>::inverse(a);
        // u = a (1 + m) with m = a^-1 (u - a) nilpotent
        EnvElement<T> m = a_inv * (u - env_term<T>(Subset(), Subset(), a));
        EnvElement<T> power = env_one<T>();
        EnvElement<T> sum = env_one<T>();
        EnvElement<T> neg_m = -m;
        while (true) {
            power = env_mul(power, neg_m);
            if (power.empty()) {
                break;
            }
            sum += power;
        }
        return a_inv * sum;
    }
};

// ---------------------------------------------------------------------------
// Graph interface

/// A graded digraph with a matching. boundary(l) lists the differential of
/// l; matched_target(l) is set when l is the source of a matched edge and
/// matched_source(l) when l is its target.
template <class G>
concept MorseGraph = requires(const G& g, const typename G::label_type& l) {
    typename G::weight_type;
    { g.boundary(l) } -> std::convertible_to<std::vector<std::pair<typename G::label_type, typename G::weight_type>>>;
    { g.matched_target(l) } -> std::convertible_to<std::optional<typename G::label_type>>;
    { g.matched_source(l) } -> std::convertible_to<std::optional<typename G::label_type>>;
};

template <class Label, class W>
struct FlowResult {
    std::vector<std::pair<Label, W>> boundary; ///< reduced differential, critical labels only
    std::vector<std::pair<Label, W>> transfer; ///< h(c), including c itself
};

namespace detail {

template <class G>
typename G::weight_type edge_weight(const G& g, const typename G::label_type& source,
                                    const typename G::label_type& target)
{
    typename G::weight_type w{};
    for (const auto& [l, x] : g.boundary(source)) {
        if (l == target) {
            w += x;
        }
    }
    return w;
}

/// Matched targets reachable from `start_terms` via t -> (source s of t) ->
/// boundary(s) \ {t}, in topological order. Throws CycleDetected.
template <MorseGraph G>
std::vector<typename G::label_type> reachable_targets_topological(
    const G& g, const std::vector<typename G::label_type>& starts,
    std::vector<typename G::label_type>* cycle_out = nullptr)
{
    using L = typename G::label_type;
    std::map<L, int> color; // 1 = on stack, 2 = finished
    std::vector<L> postorder;
    struct Frame {
        L target;
        std::vector<L> next;
        std::size_t pos = 0;
    };
    auto successors = [&](const L& t) {
        std::vector<L> out;
        auto s = g.matched_source(t);
        for (const auto& [l, w] : g.boundary(*s)) {
            if (!(l == t) && g.matched_source(l)) {
                out.push_back(l);
            }
        }
        return out;
    };
    for (const L& root : starts) {
        if (!g.matched_source(root) || color.count(root)) {
            continue;
        }
        std::vector<Frame> stack;
        color[root] = 1;
        stack.push_back({root, successors(root)});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.pos == f.next.size()) {
                color[f.target] = 2;
                postorder.push_back(f.target);
                stack.pop_back();
                continue;
            }
            L nxt = f.next[f.pos++];
            auto it = color.find(nxt);
            if (it == color.end()) {
                color[nxt] = 1;
                stack.push_back({nxt, successors(nxt)});
            } else if (it->second == 1) {
                std::vector<L> cycle;
                bool in_cycle = false;
                for (const auto& fr : stack) {
                    if (fr.target == nxt) {
                        in_cycle = true;
                    }
                    if (in_cycle) {
                        cycle.push_back(*g.matched_source(fr.target));
                        cycle.push_back(fr.target);
                    }
                }
                if (cycle_out) {
                    *cycle_out = cycle;
                }
                throw Error(ErrorCode::cycle_detected,
                            "reversed digraph has a cycle through " + std::to_string(cycle.size() / 2)
                                + " matched edges");
            }
        }
    }
    return {postorder.rbegin(), postorder.rend()};
}

} // namespace detail

/// Reduced differential of a critical cell c and its transfer h(c), by
/// pushing d(c) through the matched edges in topological order. A reversed
/// matched edge of weight w contributes -w^-1; weights multiply in path order.
template <MorseGraph G>
FlowResult<typename G::label_type, typename G::weight_type> morse_flow(const G& g,
                                                                      const typename G::label_type& c)
{
    using L = typename G::label_type;
    using W = typename G::weight_type;
    std::map<L, W> v;
    for (const auto& [l, w] : g.boundary(c)) {
        v[l] += w;
    }
    std::vector<L> starts;
    for (const auto& [l, w] : v) {
        starts.push_back(l);
    }
    const auto order = detail::reachable_targets_topological(g, starts);
    std::map<L, W> h;
    h[c] = weight_traits<W>::one();
    for (const L& t : order) {
        auto it = v.find(t);
        if (it == v.end() || is_zero(it->second)) {
            continue;
        }
        const L s = *g.matched_source(t);
        const W w = detail::edge_weight(g, s, t);
        const W factor = it->second * (-weight_traits<W>::inverse(w));
        h[s] += factor;
        for (const auto& [l, x] : g.boundary(s)) {
            v[l] += factor * x;
        }
    }
    FlowResult<L, W> out;
    for (auto& [l, w] : v) {
        if (!is_zero(w) && !g.matched_source(l) && !g.matched_target(l)) {
            out.boundary.emplace_back(l, std::move(w));
        }
    }
    for (auto& [l, w] : h) {
        if (!is_zero(w)) {
            out.transfer.emplace_back(l, std::move(w));
        }
    }
    return out;
}

/// Number of zig-zag paths from c to each cell of its own degree (the
/// trivial path to c itself included). Paths alternate a differential step
/// with a reversed matched step.
template <MorseGraph G>
std::map<typename G::label_type, std::uint64_t> zigzag_path_counts(const G& g, const typename G::label_type& c)
{
    using L = typename G::label_type;
    std::map<L, std::uint64_t> into; // paths ending at a matched target
    std::vector<L> starts;
    for (const auto& [l, w] : g.boundary(c)) {
        if (g.matched_source(l) && !(*g.matched_source(l) == c)) {
            into[l] += 1;
            starts.push_back(l);
        }
    }
    const auto order = detail::reachable_targets_topological(g, starts);
    std::map<L, std::uint64_t> ends;
    ends[c] = 1;
    for (const L& t : order) {
        auto it = into.find(t);
        if (it == into.end()) {
            continue;
        }
        const std::uint64_t cnt = it->second;
        const L s = *g.matched_source(t);
        ends[s] += cnt;
        for (const auto& [l, w] : g.boundary(s)) {
            if (!(l == t) && g.matched_source(l)) {
                into[l] += cnt;
            }
        }
    }
    return ends;
}

/// An explicit zig-zag path c = v0 -> t1 => s1 -> t2 => s2 ... ending at s_m.
template <class Label>
struct ZigZagPath {
    std::vector<Label> steps;
};

/// All zig-zag paths from c that end in its own degree (the trivial path
/// included), up to `limit` paths.
template <MorseGraph G>
std::vector<ZigZagPath<typename G::label_type>> enumerate_zigzag_paths(const G& g,
                                                                       const typename G::label_type& c,
                                                                       std::size_t limit = 1'000'000)
{
    using L = typename G::label_type;
    std::vector<ZigZagPath<L>> out;
    std::vector<ZigZagPath<L>> stack{{{c}}};
    while (!stack.empty() && out.size() < limit) {
        ZigZagPath<L> p = std::move(stack.back());
        stack.pop_back();
        const L last = p.steps.back();
        const L* arrived_from = p.steps.size() >= 2 ? &p.steps[p.steps.size() - 2] : nullptr;
        for (const auto& [l, w] : g.boundary(last)) {
            auto s = g.matched_source(l);
            if (!s || *s == last) {
                continue;
            }
            if (arrived_from != nullptr && l == *arrived_from) {
                continue;
            }
            ZigZagPath<L> q = p;
            q.steps.push_back(l);
            q.steps.push_back(*s);
            if (q.steps.size() > 4096) {
                throw Error(ErrorCode::cycle_detected, "zig-zag path exceeds 2048 steps");
            }
            stack.push_back(std::move(q));
        }
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matchings on materialized complexes

/// A matched edge: `target` occurs in the differential of `source`. For a
/// chain complex the source is the upper cell.
struct MatchEdge {
    BasisLabel source;
    BasisLabel target;
};

struct Matching {
    std::vector<MatchEdge> edges;

    void add(BasisLabel source, BasisLabel target) { edges.push_back({std::move(source), std::move(target)}); }
    std::size_t size() const { return edges.size(); }
};

struct CellRef {
    int degree = 0;
    std::size_t index = 0;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct MatchingReport {
    std::optional<ErrorCode> error;
    std::string detail;
    std::vector<BasisLabel> witness; ///< offending edge or cycle (alternating source, target)
    bool ok() const { return !error.has_value(); }
};

/// Morse graph view of a materialized complex and a matching on its labels.
template <class Entry>
class ComplexGraph {
public:
    using label_type = CellRef;
    using weight_type = Entry;

    /// Throws Error(NotAMatching) on unknown or reused labels.
    ComplexGraph(const BasedComplex<Entry>& c, const Matching& m) : c_(&c)
    {
        for (const auto& e : m.edges) {
            auto s = locate(e.source);
            auto t = locate(e.target);
            if (!s || !t) {
                throw Error(ErrorCode::not_a_matching,
                            "label " + to_string(!s ? e.source : e.target) + " is not in the complex");
            }
            if (partner_.count(*s) || partner_.count(*t)) {
                throw Error(ErrorCode::not_a_matching,
                            "label " + to_string(partner_.count(*s) ? e.source : e.target)
                                + " occurs in two matched edges");
            }
            partner_.emplace(*s, std::make_pair(*t, true));
            partner_.emplace(*t, std::make_pair(*s, false));
            edges_.emplace_back(*s, *t);
        }
    }

    std::vector<std::pair<CellRef, Entry>> boundary(const CellRef& l) const
    {
        std::vector<std::pair<CellRef, Entry>> out;
        if (!c_->has_differential(l.degree)) {
            return out;
        }
        const int t = c_->target_degree(l.degree);
        for (const auto& [r, w] : c_->differential(l.degree).column(l.index)) {
            out.emplace_back(CellRef{t, r}, w);
        }
        return out;
    }

    std::optional<CellRef> matched_target(const CellRef& l) const
    {
        auto it = partner_.find(l);
        if (it != partner_.end() && it->second.second) {
            return it->second.first;
        }
        return std::nullopt;
    }

    std::optional<CellRef> matched_source(const CellRef& l) const
    {
        auto it = partner_.find(l);
        if (it != partner_.end() && !it->second.second) {
            return it->second.first;
        }
        return std::nullopt;
    }

    bool is_critical(const CellRef& l) const { return !partner_.count(l); }

    const std::vector<std::pair<CellRef, CellRef>>& edges() const { return edges_; }
    const BasisLabel& label(const CellRef& l) const { return c_->basis(l.degree)[l.index]; }

    std::optional<CellRef> locate(const BasisLabel& label) const
    {
        for (int k = 0; k <= c_->max_degree(); ++k) {
            if (auto i = c_->index_of(k, label)) {
                return CellRef{k, *i};
            }
        }
        return std::nullopt;
    }

private:
    const BasedComplex<Entry>* c_;
    std::map<CellRef, std::pair<CellRef, bool>> partner_; // partner, this-is-source
    std::vector<std::pair<CellRef, CellRef>> edges_;
};

/// Checks edges against the differential, weight invertibility and
/// acyclicity of the reversed digraph on a generic graph, over `cells`.
template <MorseGraph G, class LabelPrinter>
MatchingReport check_morse_graph(const G& g, const std::vector<typename G::label_type>& cells,
                                 LabelPrinter print)
{
    using L = typename G::label_type;
    using W = typename G::weight_type;
    MatchingReport report;
    std::vector<L> targets;
    for (const L& l : cells) {
        auto t = g.matched_target(l);
        if (!t) {
            continue;
        }
        auto back = g.matched_source(*t);
        if (!back || !(*back == l) || g.matched_source(l)) {
            report.error = ErrorCode::not_a_matching;
            report.detail = "matching is not an involution at " + print(l);
            return report;
        }
        bool found = false;
        W w{};
        for (const auto& [x, wx] : g.boundary(l)) {
            if (x == *t) {
                found = true;
                w += wx;
            }
        }
        if (!found || is_zero(w)) {
            report.error = ErrorCode::edge_not_in_differential;
            report.detail = print(*t) + " does not occur in the differential of " + print(l);
            return report;
        }
        if (!weight_traits<W>::invertible(w)) {
            report.error = ErrorCode::non_invertible_weight;
            report.detail = "edge " + print(l) + " -> " + print(*t) + " has non-invertible weight";
            return report;
        }
        targets.push_back(*t);
    }
    std::vector<L> cycle;
    try {
        detail::reachable_targets_topological(g, targets, &cycle);
    } catch (const Error& e) {
        report.error = e.code();
        report.detail = e.what();
        std::string path;
        for (const auto& l : cycle) {
            path += (path.empty() ? "" : " ") + print(l);
        }
        report.detail += ": " + path;
    }
    return report;
}

/// Validates a matching on a materialized complex.
template <class Entry>
MatchingReport check_matching(const BasedComplex<Entry>& c, const Matching& m)
{
    MatchingReport report;
    std::optional<ComplexGraph<Entry>> g;
    try {
        g.emplace(c, m);
    } catch (const Error& e) {
        report.error = e.code();
        report.detail = e.what();
        return report;
    }
    for (const auto& [s, t] : g->edges()) {
        if (c.target_degree(s.degree) != t.degree) {
            report.error = ErrorCode::edge_not_in_differential;
            report.detail = to_string(g->label(t)) + " is not in the degree the differential of "
                            + to_string(g->label(s)) + " lands in";
            report.witness = {g->label(s), g->label(t)};
            return report;
        }
    }
    std::vector<CellRef> cells;
    for (const auto& [s, t] : g->edges()) {
        cells.push_back(s);
    }
    std::vector<CellRef> cycle;
    report = check_morse_graph(*g, cells, [&](const CellRef& l) { return to_string(g->label(l)); });
    if (report.error == ErrorCode::cycle_detected) {
        // recompute the witness as labels
        std::vector<CellRef> targets;
        for (const auto& [s, t] : g->edges()) {
            targets.push_back(t);
        }
        try {
            detail::reachable_targets_topological(*g, targets, &cycle);
        } catch (const Error&) {
            for (const auto& l : cycle) {
                report.witness.push_back(g->label(l));
            }
        }
    } else if (!report.ok()) {
        for (const auto& [s, t] : g->edges()) {
            if (report.detail.find(to_string(g->label(s))) != std::string::npos
                && report.detail.find(to_string(g->label(t))) != std::string::npos) {
                report.witness = {g->label(s), g->label(t)};
                break;
            }
        }
    }
    return report;
}

template <class Entry>
void require_matching(const BasedComplex<Entry>& c, const Matching& m)
{
    auto report = check_matching(c, m);
    if (!report.ok()) {
        throw Error(*report.error, report.detail);
    }
}

/// The Morse complex: critical cells with zig-zag path-sum differentials.
template <class Entry>
BasedComplex<Entry> reduce(const BasedComplex<Entry>& c, const Matching& m)
{
    require_matching(c, m);
    ComplexGraph<Entry> g(c, m);
    const int top = c.max_degree();
    std::vector<std::vector<BasisLabel>> bases(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<std::size_t>> new_index(static_cast<std::size_t>(top + 1));
    for (int k = 0; k <= top; ++k) {
        auto& idx = new_index[static_cast<std::size_t>(k)];
        idx.assign(c.size(k), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < c.size(k); ++i) {
            if (g.is_critical(CellRef{k, i})) {
                idx[i] = bases[static_cast<std::size_t>(k)].size();
                bases[static_cast<std::size_t>(k)].push_back(c.basis(k)[i]);
            }
        }
    }
    std::vector<SparseMatrix<Entry>> diffs;
    for (int k = 0; c.has_differential(k); ++k) {
        const int t = c.target_degree(k);
        std::vector<Triplet<Entry>> entries;
        for (std::size_t i = 0; i < c.size(k); ++i) {
            const CellRef cell{k, i};
            if (!g.is_critical(cell)) {
                continue;
            }
            for (auto& [l, w] : morse_flow(g, cell).boundary) {
                entries.push_back({new_index[static_cast<std::size_t>(t)][l.index],
                                   new_index[static_cast<std::size_t>(k)][i], std::move(w)});
            }
        }
        const std::size_t rows = t < 0 ? 0 : bases[static_cast<std::size_t>(t)].size();
        diffs.push_back(SparseMatrix<Entry>::from_triplets(rows, bases[static_cast<std::size_t>(k)].size(),
                                                           std::move(entries)));
    }
    return BasedComplex<Entry>(c.orientation(), std::move(bases), std::move(diffs));
}

/// h(c) for a critical label c, as a combination of labels of its degree.
template <class Entry>
std::vector<std::pair<BasisLabel, Entry>> transfer_h(const BasedComplex<Entry>& c, const Matching& m,
                                                     const BasisLabel& critical)
{
    require_matching(c, m);
    ComplexGraph<Entry> g(c, m);
    auto cell = g.locate(critical);
    if (!cell || !g.is_critical(*cell)) {
        throw std::invalid_argument("transfer_h: " + to_string(critical) + " is not a critical cell");
    }
    std::vector<std::pair<BasisLabel, Entry>> out;
    for (auto& [l, w] : morse_flow(g, *cell).transfer) {
        out.emplace_back(g.label(l), std::move(w));
    }
    return out;
}

} // namespace hh
