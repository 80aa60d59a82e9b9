#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ostro/enclosure.hpp"
#include "ostro/sequence.hpp"

namespace ostro {

/// Finite 0/1 word addressing incomplete sums with a fixed digit prefix.
struct Word {
    std::vector<std::uint8_t> bits;

    Word() = default;
    explicit Word(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    static Word from_string(const std::string& s);
    std::string to_string() const;

    std::size_t rank() const { return bits.size(); }
    Word child(int bit) const {
        Word w = *this;
        w.bits.push_back(static_cast<std::uint8_t>(bit));
        return w;
    }
    friend bool operator==(const Word& a, const Word& b) { return a.bits == b.bits; }
};

/// Cylindrical interval of rank m with base word c_1...c_m: the closed
/// interval [s_m - sum_{2i>m} 1/q_{2i}, s_m + sum_{2i-1>m} 1/q_{2i-1}]
/// containing every incomplete sum extending the word. Endpoints are
/// irrational and carried as certified enclosures.
struct Cylinder {
    std::shared_ptr<const OstroSequence> seq;
    Word word;
    IntervalEnclosure left;   // encloses the exact left endpoint
    IntervalEnclosure right;  // encloses the exact right endpoint
    Rational width_target;    // endpoint enclosure width used to build this

    /// Interval certainly containing the true cylinder.
    IntervalEnclosure outer() const { return IntervalEnclosure(left.lo, right.hi); }
    /// Interval certainly contained in the true cylinder (may be empty-ish
    /// for very coarse targets; callers refine via width_target).
    IntervalEnclosure inner() const {
        return left.hi <= right.lo ? IntervalEnclosure(left.hi, right.lo)
                                   : IntervalEnclosure(left.hi, left.hi);
    }
};

/// Build the cylinder for `word` with endpoint enclosures of width
/// <= width_target. Throws InsufficientDepthError when the tail cannot be
/// refined that far.
Cylinder cylinder(std::shared_ptr<const OstroSequence> seq, Word word,
                  const Rational& width_target);

/// Children for appended digits 0 and 1, in that order. The digit with the
/// positive sign (odd appended index) moves the cylinder right; with the
/// negative sign (even index) it moves left.
std::pair<Cylinder, Cylinder> subdivide(const Cylinder& cyl);

/// True if appending bit 1 at rank `parent_rank`+1 shifts right (+ sign).
inline bool bit_one_moves_right(std::size_t parent_rank) { return parent_rank % 2 == 0; }

/// Enclosure of the cylinder length sum_{k>m} 1/q_k; depends only on the
/// rank, never on the word. hi <= 2/q_{m+1}.
IntervalEnclosure cylinder_length(const OstroSequence& seq, std::size_t rank,
                                  std::size_t extra_terms = 2);
inline IntervalEnclosure cylinder_length(const Cylinder& cyl, std::size_t extra_terms = 2) {
    return cylinder_length(*cyl.seq, cyl.word.rank(), extra_terms);
}

struct LocateResult {
    Word word;
    bool located = false;
};

/// Greedy addressing: the word w of length `depth` whose cylinder
/// certifiably contains x. Because a_k > r_k, at every rank x lies in
/// exactly one child or in the gap between them; gaps certify that x is
/// not an incomplete sum and raise UndecidableError with certified_outside
/// and the separating rank.
Word locate(std::shared_ptr<const OstroSequence> seq, const Rational& x, std::size_t depth,
            const Rational& width_target, unsigned max_refinements = 6);

/// All 2^rank cylinders of the given rank in lexicographic word order.
/// Throws BudgetExceededError past `rank_budget`.
std::vector<Cylinder> cover_set(std::shared_ptr<const OstroSequence> seq, std::size_t rank,
                                const Rational& width_target, std::size_t rank_budget = 20);

/// Certify that two enclosure-valued points are separated (a < b), refining
/// the cylinders by shrinking width targets; used for sibling-gap checks.
bool certify_gap(const Cylinder& left_sibling, const Cylinder& right_sibling,
                 unsigned max_refinements = 6);

}  // namespace ostro
