// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszq {

// One group element (or dual element): a tuple of residues, one per cyclic
// factor. Lexicographic tuple order is the canonical order everywhere.
using Element = std::vector<std::int64_t>;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite abelian group presented as Z_{n1} x ... x Z_{nk}. The dual group
/// is identified with the same coordinate tuples via the fixed pairing
/// b(x) = exp(2*pi*i * sum_i x_i*b_i/n_i).
class GroupSpec {
  public:
    explicit GroupSpec(std::vector<std::int64_t> moduli);

    /// Parses descriptors like "Z4", "Z3^2", "Z2^2xZ5". Throws parse_error.
    static GroupSpec parse(const std::string& text);

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::int64_t order() const { return order_; }
    std::size_t rank() const { return moduli_.size(); }

    /// lcm of the moduli (the minimal exponent of the group).
    std::int64_t exponent() const;

    // Element enumeration is lexicographic; element(i) < element(j) as tuples
    // exactly when i < j.
    Element element(std::int64_t index) const;
    std::int64_t index_of(const Element& x) const;

    Element zero() const { return Element(moduli_.size(), 0); }
    bool is_zero(const Element& x) const;

    /// Reduces each coordinate into [0, n_i); accepts negative inputs.
    Element reduce(Element x) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element negate(const Element& x) const;
    Element scale(std::int64_t k, const Element& x) const;
    std::int64_t element_order(const Element& x) const;

    void require_conformant(const Element& x) const;

    bool operator==(const GroupSpec& other) const { return moduli_ == other.moduli_; }
    bool operator!=(const GroupSpec& other) const { return !(*this == other); }

    std::string to_string() const;

  private:
    std::vector<std::int64_t> moduli_;
    std::int64_t order_;
};

std::int64_t totient(std::int64_t m);

/// exp(2*pi*i*num/den), exact at quarter turns.
std::complex<double> unit_root(std::int64_t num, std::int64_t den);

/// Exact phase of b(x): returns p with b(x) = exp(2*pi*i*p/M), M = exponent,
/// 0 <= p < M. The sum of x_i*b_i/n_i is accumulated in integer arithmetic.
std::int64_t character_phase(const GroupSpec& g, const Element& b, const Element& x);
std::complex<double> character_value(const GroupSpec& g, const Element& b, const Element& x);

/// Dense table of all character values of a group, indexed by element index.
class CharacterTable {
  public:
    explicit CharacterTable(const GroupSpec& g);

    const GroupSpec& group() const { return group_; }
    std::complex<double> value(std::int64_t x_index, std::int64_t b_index) const {
        return values_[static_cast<std::size_t>(x_index * n_ + b_index)];
    }
    std::int64_t phase(std::int64_t x_index, std::int64_t b_index) const {
        return phases_[static_cast<std::size_t>(x_index * n_ + b_index)];
    }

  private:
    GroupSpec group_;
    std::int64_t n_;
    std::vector<std::complex<double>> values_;
    std::vector<std::int64_t> phases_;
};

class Subgroup {
  public:
    Subgroup(GroupSpec parent, std::vector<Element> elements, std::vector<Element> generators);

    const GroupSpec& parent() const { return parent_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<std::int64_t>& element_indices() const { return indices_; }
    const std::vector<Element>& generators() const { return generators_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    bool contains(const Element& x) const;
    std::int64_t exponent() const;
    bool is_cyclic() const;

    bool operator==(const Subgroup& other) const { return indices_ == other.indices_; }

  private:
    GroupSpec parent_;
    std::vector<Element> elements_;  // sorted lexicographically
    std::vector<std::int64_t> indices_;
    std::vector<Element> generators_;
};

/// Smallest subgroup containing the generators.
Subgroup subgroup_closure(const GroupSpec& g, const std::vector<Element>& generators);

/// All subgroups, deduplicated, sorted by order then by element list.
/// Throws cap_exceeded when |G| > cap.
std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g, std::int64_t cap = 64);

struct Coset {
    Element representative;  // lexicographically smallest member
    std::vector<Element> elements;
};

/// Partition of G into cosets of H, ordered by representative.
std::vector<Coset> cosets(const GroupSpec& g, const Subgroup& h);

/// H^perp = { b : b(h) = 1 for all h in H }, as a subgroup of the dual
/// (represented on the same coordinates). Membership is tested exactly.
Subgroup annihilator(const GroupSpec& g, const Subgroup& h);

/// A group homomorphism between coordinate presentations, given by an integer
/// matrix acting on coordinate columns. Entry (i,j) must satisfy
/// n_i | a_ij * n_j so the map is well defined on residues.
class ZLinearMap {
  public:
    ZLinearMap(GroupSpec domain, GroupSpec codomain, std::vector<std::vector<std::int64_t>> matrix);

    static ZLinearMap identity(const GroupSpec& g);
    static ZLinearMap scaling(const GroupSpec& g, std::int64_t k);

    const GroupSpec& domain() const { return domain_; }
    const GroupSpec& codomain() const { return codomain_; }
    const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }

    Element apply(const Element& x) const;

    bool is_invertible() const;
    ZLinearMap inverse() const;

    /// The induced map on dual coordinates, with A^t(b) = b o A.
    ZLinearMap dual() const;
    ZLinearMap inverse_dual() const;

  private:
    GroupSpec domain_;
    GroupSpec codomain_;
    std::vector<std::vector<std::int64_t>> matrix_;  // matrix_[i][j]: coeff of x_j in coord i
};

struct TransformedPair {
    std::vector<Element> E;
    std::vector<Element> B;
};

/// (E,B) -> (A(E)+t, A^{-t}(B)). Requires A invertible.
TransformedPair affine_transform_pair(const GroupSpec& g, const std::vector<Element>& E,
                                      const std::vector<Element>& B, const ZLinearMap& a,
                                      const Element& t);

/// Sorts, deduplicates and validates a subset literal against the group.
std::vector<Element> validate_subset(const GroupSpec& g, std::vector<Element> subset);

/// Parses "(0,0),(1,0)" style tuples, bare integers for rank-1 groups, or a
/// JSON array of integer arrays.
std::vector<Element> parse_subset(const GroupSpec& g, const std::string& text);

std::string format_element(const Element& x);
std::string format_subset(const std::vector<Element>& subset);

}  // namespace rieszq
