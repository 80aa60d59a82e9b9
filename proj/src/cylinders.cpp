#include "ostro/cylinders.hpp"

#include <sstream>

namespace ostro {

Word Word::from_string(const std::string& s) {
    Word w;
    w.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw Error("word digits must be 0 or 1");
        w.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

std::string Word::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

namespace {

// Smallest cutoff D >= rank with 2/q_{D+1} <= width_target.
std::size_t tail_cutoff(const OstroSequence& seq, std::size_t rank, const Rational& target) {
    std::size_t d = rank;
    while (true) {
        if (!seq.can_materialize(d + 1))
            throw InsufficientDepthError(
                "cylinder: tail refinement to width " + target.to_string() + " needs q_" +
                std::to_string(d + 1) + " which cannot be materialized");
        if (Rational(2) * seq.term(d + 1) <= target) return d;
        ++d;
    }
}

}  // namespace

Cylinder cylinder(std::shared_ptr<const OstroSequence> seq, Word word,
                  const Rational& width_target) {
    if (width_target.sign() <= 0) throw Error("cylinder: width_target must be positive");
    const std::size_t m = word.rank();
    const OstroSequence& s = *seq;
    std::size_t cutoff = tail_cutoff(s, m, width_target);

    Rational s_m(0);
    for (std::size_t k = 1; k <= m; ++k)
        if (word.bits[k - 1]) s_m += (k % 2 == 1) ? s.term(k) : -s.term(k);

    Rational even_part(0), odd_part(0);
    for (std::size_t k = m + 1; k <= cutoff; ++k)
        (k % 2 == 0 ? even_part : odd_part) += s.term(k);
    Rational tail_bound = Rational(2) * s.term(cutoff + 1);

    Cylinder c;
    c.seq = std::move(seq);
    c.word = std::move(word);
    c.width_target = width_target;
    c.left = IntervalEnclosure(s_m - even_part - tail_bound, s_m - even_part);
    c.right = IntervalEnclosure(s_m + odd_part, s_m + odd_part + tail_bound);
    return c;
}

std::pair<Cylinder, Cylinder> subdivide(const Cylinder& cyl) {
    return {cylinder(cyl.seq, cyl.word.child(0), cyl.width_target),
            cylinder(cyl.seq, cyl.word.child(1), cyl.width_target)};
}

IntervalEnclosure cylinder_length(const OstroSequence& seq, std::size_t rank,
                                  std::size_t extra_terms) {
    while (extra_terms > 0 && !seq.can_materialize(rank + extra_terms + 1)) --extra_terms;
    return enclose_tail(seq, rank, extra_terms);
}

bool certify_gap(const Cylinder& left_sibling, const Cylinder& right_sibling,
                 unsigned max_refinements) {
    Cylinder l = left_sibling, r = right_sibling;
    for (unsigned i = 0; i <= max_refinements; ++i) {
        if (l.right.hi < r.left.lo) return true;
        if (r.left.hi < l.right.lo) return false;  // ordered the other way; caller's mistake
        Rational finer = l.width_target / Rational(4);
        l = cylinder(l.seq, l.word, finer);
        r = cylinder(r.seq, r.word, finer);
    }
    return false;
}

Word locate(std::shared_ptr<const OstroSequence> seq, const Rational& x, std::size_t depth,
            const Rational& width_target, unsigned max_refinements) {
    Cylinder root = cylinder(seq, Word{}, width_target);
    if (x < root.left.lo || x > root.right.hi)
        throw UndecidableError("locate: x outside the rank-0 cylinder", 0, true);

    Word w;
    for (std::size_t k = 1; k <= depth; ++k) {
        Rational target = width_target;
        for (unsigned attempt = 0;; ++attempt) {
            Cylinder c0 = cylinder(seq, w.child(0), target);
            Cylinder c1 = cylinder(seq, w.child(1), target);
            const bool one_right = bit_one_moves_right(w.rank());
            const Cylinder& lc = one_right ? c0 : c1;
            const Cylinder& rc = one_right ? c1 : c0;
            // membership certificates: inside means within [left.hi, right.lo]
            bool in_l = x >= lc.left.hi && x <= lc.right.lo;
            bool in_r = x >= rc.left.hi && x <= rc.right.lo;
            if (in_l || in_r) {
                w.bits.push_back(static_cast<std::uint8_t>(in_l == one_right ? 0 : 1));
                break;
            }
            bool in_gap = x > lc.right.hi && x < rc.left.lo;
            if (in_gap) {
                std::ostringstream msg;
                msg << "locate: x = " << x.to_string()
                    << " lies in the certified gap between siblings at rank " << k
                    << "; not an incomplete sum of this sequence";
                throw UndecidableError(msg.str(), k, true);
            }
            bool outside = x < lc.left.lo || x > rc.right.hi;
            if (outside) {
                throw UndecidableError("locate: x certified outside both children at rank " +
                                           std::to_string(k),
                                       k, true);
            }
            if (attempt >= max_refinements)
                throw UndecidableError(
                    "locate: refinement budget exhausted at rank " + std::to_string(k), k,
                    false);
            target = target / Rational(4);
        }
    }
    return w;
}

std::vector<Cylinder> cover_set(std::shared_ptr<const OstroSequence> seq, std::size_t rank,
                                const Rational& width_target, std::size_t rank_budget) {
    if (rank > rank_budget)
        throw BudgetExceededError("cover_set: rank " + std::to_string(rank) +
                                  " exceeds budget " + std::to_string(rank_budget));
    std::vector<Cylinder> out;
    out.reserve(static_cast<std::size_t>(1) << rank);
    std::vector<std::uint8_t> bits(rank, 0);
    while (true) {
        out.push_back(cylinder(seq, Word{bits}, width_target));
        // lexicographic increment
        std::size_t i = rank;
        while (i > 0 && bits[i - 1] == 1) bits[--i] = 0;
        if (i == 0) break;
        bits[i - 1] = 1;
    }
    return out;
}

}  // namespace ostro
