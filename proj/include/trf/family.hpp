#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trf {

// A subset of the ground set [n], n <= 30, as a bit word.
// Bit j (0-based) set means element j+1 is in the subset.
using Mask = std::uint32_t;

constexpr int kMaxGroundSet = 30;

inline int popcount(Mask m) { return __builtin_popcount(m); }

inline Mask full_mask(int n) { return (n == 0) ? 0u : ((Mask{1} << n) - 1u); }

// Ground-set size validation shared by Family and the free functions.
void check_ground_set(int n);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Duplicate-free, strictly sorted collection of subsets of [n].
// Immutable after construction; all operations return new families.
class Family {
  public:
    explicit Family(int n) : n_(n) { check_ground_set(n); }
    Family(int n, std::vector<Mask> members);

    static Family from_sets(int n, const std::vector<std::vector<int>>& sets);

    int n() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<Mask>& members() const { return members_; }
    bool contains(Mask m) const;

    bool operator==(const Family& o) const {
        return n_ == o.n_ && members_ == o.members_;
    }
    bool operator!=(const Family& o) const { return !(*this == o); }
    bool operator<(const Family& o) const;  // lex on (n, member sequence)

    std::vector<int> set_elements(std::size_t idx) const;

  private:
    int n_;
    std::vector<Mask> members_;
};

// F|_X = F n X. Both masks must live over the same ground set; the
// caller-facing overload taking families enforces that.
inline Mask trace_set(Mask f, Mask x) { return f & x; }

Family trace_family(const Family& fam, Mask x);

// D_i on a single set and on a family (size-preserving).
Family down_compress(const Family& fam, int i);

// Iterate D_1..D_n cyclically until nothing changes.
Family down_compress_fixpoint(const Family& fam);

bool is_downward_closed(const Family& fam);
bool is_upward_closed(const Family& fam);

Family closure_down(const Family& fam);
Family closure_up(const Family& fam);

// All sets obtained by deleting one element from a member.
Family shadow(const Family& fam);

Family complement_family(const Family& fam);

// Apply a ground-set permutation: element i+1 -> perm[i]+1.
Mask apply_permutation(Mask m, const std::vector<int>& perm);
Family apply_permutation(const Family& fam, const std::vector<int>& perm);

struct CanonicalResult {
    Family family;
    bool exact;  // false when the degree-refinement heuristic was used
};

// Lexicographically least representative of the S_n-orbit.
// Exhaustive for n <= 8; refinement heuristic above (flagged).
CanonicalResult canonical_form_ex(const Family& fam);
Family canonical_form(const Family& fam);
bool is_canonical(const Family& fam);

Family level_family(int n, int k);
Family levels_at_most(int n, int k);
Family levels_at_least(int n, int k);

// Exact binomial coefficient, n <= 62.
long long binomial(int n, int k);

// JSON interchange: {"n": int, "sets": [[ints]]} or {"n": int, "masks": [hex]}.
std::string family_to_json(const Family& fam);
Family family_from_json(const std::string& text);

std::string set_to_string(Mask m);
std::string family_to_string(const Family& fam);

}  // namespace trf
