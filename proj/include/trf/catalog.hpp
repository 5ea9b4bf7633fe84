#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trf/family.hpp"
#include "trf/poset.hpp"
#include "trf/search.hpp"

namespace trf {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCatalogEnvVar = "TRF_CATALOG";

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CatalogKey {
    std::string kind;  // la | la_d | la_u | tr | tr_l | arrow | construction
    std::string poset_id;
    int n = 0;
    std::optional<int> l;
    bool operator==(const CatalogKey& o) const {
        return kind == o.kind && poset_id == o.poset_id && n == o.n && l == o.l;
    }
};

struct CatalogEntry {
    CatalogKey key;
    long long value = 0;
    std::string status;       // exact | lower_bound_only
    std::string witness_ref;  // content hash into the sidecar dir, may be empty
    std::vector<std::string> bounds_used;
    std::string symmetry;     // exact | heuristic | off
    std::string method_note;  // free-form (stabilization ranges etc.)
    std::string tool_version;
    std::string timestamp;    // UTC, ISO 8601
};

// Single-file JSON catalog plus a sidecar directory of content-addressed
// witness blobs next to it (<path>.witnesses/<hash>.json).
class Catalog {
  public:
    explicit Catalog(std::string path);

    static std::string default_path();

    const std::string& path() const { return path_; }
    std::string witness_dir() const;
    const std::vector<CatalogEntry>& entries() const { return entries_; }

    std::optional<CatalogEntry> get(const CatalogKey& key) const;

    // Stores the entry (and optional witness blob), filling witness_ref,
    // tool_version and timestamp. Re-putting an identical claim is a
    // no-op; two exact claims disagreeing on the value is an integrity
    // error; otherwise the stronger entry (exact, then larger) wins.
    CatalogEntry put(CatalogEntry entry, const std::optional<Family>& witness);

    std::optional<Family> load_witness(const std::string& ref) const;

    void save() const;

  private:
    std::string path_;
    std::vector<CatalogEntry> entries_;
};

// Three-way file merge: union of entries under the put conflict rules,
// witness blobs copied by content address. Commutative and idempotent.
void catalog_merge(const std::string& file_a, const std::string& file_b,
                   const std::string& out_file);

std::string fnv1a64_hex(const std::string& text);

// A self-contained, solver-independent claim with its evidence.
struct Certificate {
    std::string kind;  // la | la_d | la_u | tr | tr_l | arrow
    int n = 0;
    std::optional<int> l;
    std::optional<int> m;  // arrow only
    std::optional<int> k;  // arrow only
    long long value = 0;   // extremal value, or 0/1 = arrow holds
    std::string status;    // exact | lower_bound_only
    std::optional<Poset> poset;
    std::optional<Family> family;  // witness or arrow counterexample
};

struct VerifyReport {
    bool pass = false;
    bool solver_trusted_upper = false;  // the "no bigger family" half
    std::vector<std::string> checks;
    std::string failure;  // first violated invariant, empty on pass
};

// Replays the evidence using only the embedding/chains predicates.
VerifyReport verify_certificate(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

// Builds the replayable certificate for a catalog entry + stored witness.
Certificate certificate_for_entry(const CatalogEntry& entry, const Poset& p,
                                  const std::optional<Family>& witness);

struct ProbeReport {
    std::string conjecture = "1.5";
    std::string poset_id;
    int n = 0;
    int k = 0;
    int l = 0;  // n - k
    long long tr_value = 0;
    std::string solver_status;
    long long middle_binomial = 0;
    double ratio = 0.0;       // tr_value / C(n, n/2)
    int e_value = 0;          // finite-envelope e(P)
    double predicted = 0.0;   // e(P) - k
    std::string note;         // always flags this as a finite data point
};

ProbeReport probe_conjecture_1_5(const Poset& p, int n, int k,
                                 const SearchBudget& budget = {});

std::string probe_report_to_json(const ProbeReport& rep);

}  // namespace trf
