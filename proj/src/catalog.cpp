#include "trf/catalog.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "trf/embedding.hpp"

namespace trf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json key_to_json(const CatalogKey& k) {
    json j{{"kind", k.kind}, {"poset_id", k.poset_id}, {"n", k.n}};
    if (k.l) j["l"] = *k.l;
    return j;
}

CatalogKey key_from_json(const json& j) {
    CatalogKey k;
    k.kind = j.at("kind").get<std::string>();
    k.poset_id = j.at("poset_id").get<std::string>();
    k.n = j.at("n").get<int>();
    if (j.contains("l")) k.l = j.at("l").get<int>();
    return k;
}

json entry_to_json(const CatalogEntry& e) {
    return json{{"key", key_to_json(e.key)},
                {"value", e.value},
                {"status", e.status},
                {"witness_ref", e.witness_ref},
                {"bounds_used", e.bounds_used},
                {"symmetry", e.symmetry},
                {"method_note", e.method_note},
                {"tool_version", e.tool_version},
                {"timestamp", e.timestamp}};
}

CatalogEntry entry_from_json(const json& j) {
    CatalogEntry e;
    e.key = key_from_json(j.at("key"));
    e.value = j.at("value").get<long long>();
    e.status = j.at("status").get<std::string>();
    e.witness_ref = j.value("witness_ref", "");
    e.bounds_used = j.value("bounds_used", std::vector<std::string>{});
    e.symmetry = j.value("symmetry", "");
    e.method_note = j.value("method_note", "");
    e.tool_version = j.value("tool_version", "");
    e.timestamp = j.value("timestamp", "");
    return e;
}

// Returns the entry that should survive when both claim the same key.
const CatalogEntry& stronger(const CatalogEntry& a, const CatalogEntry& b) {
    bool ae = a.status == "exact", be = b.status == "exact";
    if (ae && be) {
        if (a.value != b.value)
            throw IntegrityError("conflicting exact values for one key: " +
                                 std::to_string(a.value) + " vs " +
                                 std::to_string(b.value));
        return a;
    }
    if (ae != be) return ae ? a : b;
    return a.value >= b.value ? a : b;
}

void copy_blobs(const std::string& from_dir, const std::string& to_dir) {
    if (!fs::exists(from_dir)) return;
    fs::create_directories(to_dir);
    for (const auto& ent : fs::directory_iterator(from_dir)) {
        fs::path dst = fs::path(to_dir) / ent.path().filename();
        if (!fs::exists(dst)) fs::copy_file(ent.path(), dst);
    }
}

}  // namespace

std::string fnv1a64_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Catalog::Catalog(std::string path) : path_(std::move(path)) {
    if (!fs::exists(path_)) return;
    json j = json::parse(read_file(path_));
    for (const auto& je : j.value("entries", json::array()))
        entries_.push_back(entry_from_json(je));
}

std::string Catalog::default_path() {
    if (const char* env = std::getenv(kCatalogEnvVar)) return env;
    return "catalog.json";
}

std::string Catalog::witness_dir() const { return path_ + ".witnesses"; }

std::optional<CatalogEntry> Catalog::get(const CatalogKey& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return e;
    return std::nullopt;
}

CatalogEntry Catalog::put(CatalogEntry entry,
                          const std::optional<Family>& witness) {
    entry.tool_version = kToolVersion;
    entry.timestamp = now_utc();
    if (witness) {
        std::string text = family_to_json(*witness);
        entry.witness_ref = fnv1a64_hex(text);
        fs::create_directories(witness_dir());
        std::string blob =
            (fs::path(witness_dir()) / (entry.witness_ref + ".json")).string();
        if (!fs::exists(blob)) write_file(blob, text);
    }
    bool placed = false;
    for (auto& e : entries_)
        if (e.key == entry.key) {
            e = stronger(entry, e);
            placed = true;
            break;
        }
    if (!placed) entries_.push_back(entry);
    save();
    for (const auto& e : entries_)
        if (e.key == entry.key) return e;
    return entry;  // unreachable
}

std::optional<Family> Catalog::load_witness(const std::string& ref) const {
    if (ref.empty()) return std::nullopt;
    std::string blob = (fs::path(witness_dir()) / (ref + ".json")).string();
    if (!fs::exists(blob)) return std::nullopt;
    return family_from_json(read_file(blob));
}

void Catalog::save() const {
    json j{{"version", 1}, {"tool_version", kToolVersion}};
    j["entries"] = json::array();
    for (const auto& e : entries_) j["entries"].push_back(entry_to_json(e));
    write_file(path_, j.dump(2) + "\n");
}

void catalog_merge(const std::string& file_a, const std::string& file_b,
                   const std::string& out_file) {
    Catalog a(file_a), b(file_b);
    std::vector<CatalogEntry> merged = a.entries();
    for (const auto& eb : b.entries()) {
        bool placed = false;
        for (auto& ea : merged)
            if (ea.key == eb.key) {
                ea = stronger(ea, eb);
                placed = true;
                break;
            }
        if (!placed) merged.push_back(eb);
    }
    json j{{"version", 1}, {"tool_version", kToolVersion}};
    j["entries"] = json::array();
    for (const auto& e : merged) j["entries"].push_back(entry_to_json(e));
    write_file(out_file, j.dump(2) + "\n");
    copy_blobs(file_a + ".witnesses", out_file + ".witnesses");
    copy_blobs(file_b + ".witnesses", out_file + ".witnesses");
}

namespace {

bool need(VerifyReport& rep, bool ok, const std::string& what) {
    if (ok) {
        rep.checks.push_back("pass: " + what);
        return true;
    }
    rep.checks.push_back("FAIL: " + what);
    if (rep.failure.empty()) rep.failure = what;
    return false;
}

}  // namespace

VerifyReport verify_certificate(const Certificate& cert) {
    VerifyReport rep;
    rep.pass = true;
    auto check = [&](bool ok, const std::string& what) {
        if (!need(rep, ok, what)) rep.pass = false;
    };

    if (cert.kind == "arrow") {
        if (!cert.m || !cert.k || !cert.l) {
            check(false, "arrow certificate carries m, k and l");
            return rep;
        }
        if (cert.value != 0) {
            // "holds" has no finite witness: it is the solver's exhaustion
            rep.solver_trusted_upper = true;
            rep.checks.push_back(
                "solver-trusted: arrow holds (exhaustive search, no witness)");
            return rep;
        }
        if (!cert.family) {
            check(false, "arrow counterexample present");
            return rep;
        }
        const Family& f = *cert.family;
        check(f.n() == cert.n, "counterexample lives over [n]");
        check(static_cast<int>(f.size()) == *cert.m,
              "counterexample has m members");
        check(is_downward_closed(f), "counterexample downward closed");
        bool small = true;
        for (Mask x = 0; x < (Mask{1} << cert.n) && small; ++x)
            if (popcount(x) == *cert.k &&
                static_cast<int>(trace_family(f, x).size()) >= *cert.l)
                small = false;
        check(small, "every k-set trace stays below l");
        return rep;
    }

    if (!cert.poset || !cert.family) {
        check(false, "certificate carries poset and witness family");
        return rep;
    }
    const Poset& p = *cert.poset;
    const Family& f = *cert.family;
    check(f.n() == cert.n, "witness lives over [n]");
    check(static_cast<long long>(f.size()) == cert.value,
          "witness has exactly `value` members");
    if (cert.kind == "la") {
        check(is_p_free(f, p), "witness P-free");
    } else if (cert.kind == "la_d") {
        check(is_p_free(f, p), "witness P-free");
        check(is_downward_closed(f), "witness downward closed");
    } else if (cert.kind == "la_u") {
        check(is_p_free(f, p), "witness P-free");
        check(is_upward_closed(f), "witness upward closed");
    } else if (cert.kind == "tr") {
        bool free = (cert.n <= 6) ? is_trace_p_free_naive(f, p)
                                  : is_trace_p_free(f, p);
        check(free, "witness trace P-free");
    } else if (cert.kind == "tr_l") {
        if (!cert.l) {
            check(false, "tr_l certificate carries l");
        } else {
            check(is_l_trace_p_free(f, p, *cert.l), "witness l-trace P-free");
        }
    } else {
        check(false, "known certificate kind");
    }
    if (cert.status == "exact") {
        // maximality ("no family of size value+1") is not replayable
        rep.solver_trusted_upper = true;
        rep.checks.push_back("solver-trusted: no larger family exists");
    }
    return rep;
}

std::string certificate_to_json(const Certificate& cert) {
    json claim{{"kind", cert.kind},
               {"n", cert.n},
               {"value", cert.value},
               {"status", cert.status}};
    if (cert.l) claim["l"] = *cert.l;
    if (cert.m) claim["m"] = *cert.m;
    if (cert.k) claim["k"] = *cert.k;
    json j{{"claim", claim}};
    if (cert.poset) j["poset"] = json::parse(poset_to_json(*cert.poset));
    if (cert.family) j["evidence"] = json::parse(family_to_json(*cert.family));
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    const json& claim = j.at("claim");
    Certificate c;
    c.kind = claim.at("kind").get<std::string>();
    c.n = claim.at("n").get<int>();
    c.value = claim.at("value").get<long long>();
    c.status = claim.value("status", "exact");
    if (claim.contains("l")) c.l = claim.at("l").get<int>();
    if (claim.contains("m")) c.m = claim.at("m").get<int>();
    if (claim.contains("k")) c.k = claim.at("k").get<int>();
    if (j.contains("poset")) c.poset = poset_from_json(j.at("poset").dump());
    if (j.contains("evidence"))
        c.family = family_from_json(j.at("evidence").dump());
    return c;
}

Certificate certificate_for_entry(const CatalogEntry& entry, const Poset& p,
                                  const std::optional<Family>& witness) {
    Certificate c;
    c.kind = entry.key.kind;
    c.n = entry.key.n;
    c.l = entry.key.l;
    c.value = entry.value;
    c.status = entry.status;
    c.poset = p;
    c.family = witness;
    if (entry.key.kind == "arrow") {
        int m = 0, k = 0;
        if (std::sscanf(entry.method_note.c_str(), "m=%d k=%d", &m, &k) == 2) {
            c.m = m;
            c.k = k;
        }
        c.poset.reset();
    }
    return c;
}

ProbeReport probe_conjecture_1_5(const Poset& p, int n, int k,
                                 const SearchBudget& budget) {
    if (k < 1 || k >= n) throw UsageError("probe needs 1 <= k < n");
    ProbeReport rep;
    rep.poset_id = poset_canonical_id(p);
    rep.n = n;
    rep.k = k;
    rep.l = n - k;
    ExtremalResult res = solve_tr_l(n, n - k, p, budget);
    rep.tr_value = res.value;
    rep.solver_status = res.status;
    rep.middle_binomial = binomial(n, n / 2);
    rep.ratio = static_cast<double>(rep.tr_value) /
                static_cast<double>(rep.middle_binomial);
    rep.e_value = param_e(p, 3, 8).value;
    rep.predicted = static_cast<double>(rep.e_value - k);
    rep.note = "finite data point at n=" + std::to_string(n) +
               ", not evidence of the limit";
    return rep;
}

std::string probe_report_to_json(const ProbeReport& rep) {
    json j{{"conjecture", rep.conjecture},
           {"poset_id", rep.poset_id},
           {"n", rep.n},
           {"k", rep.k},
           {"l", rep.l},
           {"tr_value", rep.tr_value},
           {"solver_status", rep.solver_status},
           {"middle_binomial", rep.middle_binomial},
           {"ratio", rep.ratio},
           {"e_value", rep.e_value},
           {"predicted", rep.predicted},
           {"note", rep.note}};
    return j.dump(2);
}

}  // namespace trf
