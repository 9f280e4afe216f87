#pragma once

// Based (co)chain complexes: labeled bases per degree, sparse differentials,
// square-zero validation and homology.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/combinat.hpp"
#include "hh/error.hpp"
#include "hh/linalg.hpp"
#include "hh/sparse_matrix.hpp"

namespace hh {

struct NamedCell {
    std::string name;
    friend auto operator<=>(const NamedCell&, const NamedCell&) = default;
};

/// 1 (x) x_{s1} (x) ... (x) x_{sk} (x) 1
struct BarTensor {
    Tensor factors;
    friend auto operator<=>(const BarTensor&, const BarTensor&) = default;
};

/// Reduced resolution generator x_(tau).
struct Generator {
    Multiset tau;
    friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// x_sigma (x) x_(tau) in the reduced chain complex.
struct ChainCell {
    Subset sigma;
    Multiset tau;
    friend auto operator<=>(const ChainCell&, const ChainCell&) = default;
};

/// phi_{tau,sigma} in the reduced cochain complex.
struct CochainCell {
    Multiset tau;
    Subset sigma;
    friend auto operator<=>(const CochainCell&, const CochainCell&) = default;
};

/// x_sigma (x) (x_{s1} (x) ... (x) x_{sk}) in the bar chain complex.
struct BarChainCell {
    Subset sigma;
    Tensor tensor;
    friend auto operator<=>(const BarChainCell&, const BarChainCell&) = default;
};

/// phi_{v,sigma}: the bar cochain sending the tensor v to x_sigma.
struct BarCochainCell {
    Tensor tensor;
    Subset sigma;
    friend auto operator<=>(const BarCochainCell&, const BarCochainCell&) = default;
};

using BasisLabel
    = std::variant<NamedCell, BarTensor, Generator, ChainCell, CochainCell, BarChainCell, BarCochainCell>;

inline std::string tensor_to_string(const Tensor& t) { return detail::key_string(t); }

inline std::string inner_tensor_string(const Tensor& t)
{
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) {
            s += "|";
        }
        s += detail::monomial_string(t[i]);
    }
    return s + "]";
}

inline std::string to_string(const BasisLabel& label)
{
    struct Visitor {
        std::string operator()(const NamedCell& c) const { return c.name; }
        std::string operator()(const BarTensor& c) const { return tensor_to_string(c.factors); }
        std::string operator()(const Generator& c) const { return "x_" + c.tau.to_string(); }
        std::string operator()(const ChainCell& c) const
        {
            return "x_" + c.sigma.to_string() + "⊗x_" + c.tau.to_string();
        }
        std::string operator()(const CochainCell& c) const
        {
            return "phi[" + c.tau.to_string() + "," + c.sigma.to_string() + "]";
        }
        std::string operator()(const BarChainCell& c) const
        {
            return "x_" + c.sigma.to_string() + "⊗" + inner_tensor_string(c.tensor);
        }
        std::string operator()(const BarCochainCell& c) const
        {
            return "phi[" + inner_tensor_string(c.tensor) + "," + c.sigma.to_string() + "]";
        }
    };
    return std::visit(Visitor{}, label);
}

/// Lets Combination<Label, T> render with label names.
inline std::string key_string(const BasisLabel& label) { return to_string(label); }

enum class Orientation { chain, cochain };

/// Complex concentrated in degrees 0..max_degree. differential(k) is the map
/// out of degree k: into k-1 for chains (zero map at k = 0), into k+1 for
/// cochains (absent at the top degree, which is the truncation edge).
template <class Entry>
class BasedComplex {
public:
    using entry_type = Entry;

    BasedComplex() = default;

    BasedComplex(Orientation orientation, std::vector<std::vector<BasisLabel>> bases,
                 std::vector<SparseMatrix<Entry>> differentials)
        : orientation_(orientation), bases_(std::move(bases)), diffs_(std::move(differentials))
    {
        const std::size_t expected = orientation_ == Orientation::chain
                                         ? bases_.size()
                                         : (bases_.empty() ? 0 : bases_.size() - 1);
        if (diffs_.size() != expected) {
            throw std::invalid_argument("BasedComplex: expected " + std::to_string(expected)
                                        + " differentials, got " + std::to_string(diffs_.size()));
        }
        for (int k = 0; k < static_cast<int>(diffs_.size()); ++k) {
            const auto& d = diffs_[static_cast<std::size_t>(k)];
            const int target = target_degree(k);
            const std::size_t rows = target < 0 ? 0 : size(target);
            if (d.cols() != size(k) || d.rows() != rows) {
                throw std::invalid_argument("BasedComplex: differential out of degree "
                                            + std::to_string(k) + " has shape "
                                            + std::to_string(d.rows()) + "x" + std::to_string(d.cols())
                                            + ", expected " + std::to_string(rows) + "x"
                                            + std::to_string(size(k)));
            }
        }
        index_.resize(bases_.size());
        for (std::size_t k = 0; k < bases_.size(); ++k) {
            for (std::size_t i = 0; i < bases_[k].size(); ++i) {
                if (!index_[k].emplace(bases_[k][i], i).second) {
                    throw std::invalid_argument("BasedComplex: duplicate label " + to_string(bases_[k][i])
                                                + " in degree " + std::to_string(k));
                }
            }
        }
    }

    Orientation orientation() const { return orientation_; }
    bool is_chain() const { return orientation_ == Orientation::chain; }
    int max_degree() const { return static_cast<int>(bases_.size()) - 1; }

    std::size_t size(int k) const
    {
        return (k < 0 || k > max_degree()) ? 0 : bases_[static_cast<std::size_t>(k)].size();
    }

    const std::vector<BasisLabel>& basis(int k) const { return bases_.at(static_cast<std::size_t>(k)); }
    const std::vector<std::vector<BasisLabel>>& bases() const { return bases_; }

    /// Degree the differential out of k lands in.
    int target_degree(int k) const { return is_chain() ? k - 1 : k + 1; }

    bool has_differential(int k) const { return k >= 0 && k < static_cast<int>(diffs_.size()); }

    const SparseMatrix<Entry>& differential(int k) const
    {
        if (!has_differential(k)) {
            throw Error(ErrorCode::out_of_range,
                        "no differential out of degree " + std::to_string(k) + " (complex built to degree "
                            + std::to_string(max_degree()) + ")");
        }
        return diffs_[static_cast<std::size_t>(k)];
    }

    /// Index of a label in degree k.
    std::optional<std::size_t> index_of(int k, const BasisLabel& label) const
    {
        if (k < 0 || k > max_degree()) {
            return std::nullopt;
        }
        const auto& idx = index_[static_cast<std::size_t>(k)];
        auto it = idx.find(label);
        if (it == idx.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Degree of a label, searching all degrees.
    std::optional<int> degree_of(const BasisLabel& label) const
    {
        for (int k = 0; k <= max_degree(); ++k) {
            if (index_of(k, label)) {
                return k;
            }
        }
        return std::nullopt;
    }

private:
    Orientation orientation_ = Orientation::chain;
    std::vector<std::vector<BasisLabel>> bases_;
    std::vector<SparseMatrix<Entry>> diffs_;
    std::vector<std::map<BasisLabel, std::size_t>> index_;
};

struct ValidationReport {
    std::vector<int> failing_degrees; ///< degrees k where d o d out of k is nonzero
    bool ok() const { return failing_degrees.empty(); }
};

/// Checks that consecutive differentials compose to zero.
template <class Entry>
ValidationReport validate_complex(const BasedComplex<Entry>& c)
{
    ValidationReport report;
    for (int k = 0; k <= c.max_degree(); ++k) {
        if (!c.has_differential(k)) {
            continue;
        }
        const int t = c.target_degree(k);
        if (!c.has_differential(t)) {
            continue;
        }
        if (!compose(c.differential(t), c.differential(k)).is_zero()) {
            report.failing_degrees.push_back(k);
        }
    }
    return report;
}

/// Homology at degree k of an integer complex, with coefficients reduced into `ring`.
inline HomologyGroup homology(const BasedComplex<Integer>& c, int k, const Ring& ring)
{
    if (k < 0 || k > c.max_degree()) {
        throw Error(ErrorCode::out_of_range, "degree " + std::to_string(k) + " outside 0.."
                                                 + std::to_string(c.max_degree()));
    }
    const int in_degree = c.is_chain() ? k + 1 : k - 1;
    if (in_degree > c.max_degree() || !c.has_differential(k)) {
        throw Error(ErrorCode::out_of_range, "degree " + std::to_string(k)
                                                 + " is at the truncation edge; needs one more degree");
    }
    const SparseMatrix<Integer>& out = c.differential(k);
    SparseMatrix<Integer> in = in_degree < 0 ? SparseMatrix<Integer>(c.size(k), 0) : c.differential(in_degree);
    if (ring.kind() == Ring::Kind::integers) {
        return homology_pair(out, in);
    }
    HomologyGroup h;
    h.free_rank = c.size(k) - rank_over_field(out, ring.characteristic())
                  - rank_over_field(in, ring.characteristic());
    return h;
}

/// Dimension of homology at degree k of a complex over a field T.
template <class T>
std::size_t field_homology_dimension(const BasedComplex<T>& c, int k)
{
    const int in_degree = c.is_chain() ? k + 1 : k - 1;
    if (k < 0 || in_degree > c.max_degree() || !c.has_differential(k)) {
        throw Error(ErrorCode::out_of_range, "degree " + std::to_string(k)
                                                 + " is at the truncation edge; needs one more degree");
    }
    std::size_t in_rank = in_degree < 0 ? 0 : field_rank(c.differential(in_degree));
    return c.size(k) - field_rank(c.differential(k)) - in_rank;
}

/// Applies f to every differential entry.
template <class Entry, class F>
auto map_complex(const BasedComplex<Entry>& c, F f)
{
    using U = decltype(f(std::declval<const Entry&>()));
    std::vector<SparseMatrix<U>> diffs;
    for (int k = 0; c.has_differential(k); ++k) {
        diffs.push_back(c.differential(k).map(f));
    }
    return BasedComplex<U>(c.orientation(), c.bases(), std::move(diffs));
}

/// Line-oriented text form: a header, then per degree the basis and the
/// nonzero differential entries "row col value".
template <class Entry, class Printer>
std::string to_text(const BasedComplex<Entry>& c, Printer print_entry)
{
    std::ostringstream os;
    os << "complex " << (c.is_chain() ? "chain" : "cochain") << " max_degree " << c.max_degree() << "\n";
    for (int k = 0; k <= c.max_degree(); ++k) {
        os << "degree " << k << " size " << c.size(k) << "\n";
        for (std::size_t i = 0; i < c.size(k); ++i) {
            os << "  " << i << " " << to_string(c.basis(k)[i]) << "\n";
        }
        if (!c.has_differential(k)) {
            continue;
        }
        const auto& d = c.differential(k);
        os << "differential " << k << " -> " << c.target_degree(k) << " entries " << d.nonzeros() << "\n";
        for (std::size_t col = 0; col < d.cols(); ++col) {
            for (const auto& [row, v] : d.column(col)) {
                os << "  " << row << " " << col << " " << print_entry(v) << "\n";
            }
        }
    }
    return os.str();
}

} // namespace hh
