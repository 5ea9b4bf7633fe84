#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "trf/catalog.hpp"

using namespace trf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("trf-test-" + std::to_string(std::rand()) + "-" +
               std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

CatalogEntry make_entry(const std::string& kind, const std::string& pid, int n,
                        long long value, const std::string& status) {
    CatalogEntry e;
    e.key = {kind, pid, n, std::nullopt};
    e.value = value;
    e.status = status;
    e.symmetry = "exact";
    return e;
}

}  // namespace

TEST_CASE("catalog: put, get, witness round-trip, persistence") {
    TempDir tmp;
    std::string path = tmp.file("catalog.json");
    Family wit = Family::from_sets(3, {{}, {1}, {2}});
    {
        Catalog cat(path);
        CatalogEntry e = cat.put(make_entry("la", "pid-1", 3, 3, "exact"), wit);
        CHECK(!e.witness_ref.empty());
        CHECK(e.tool_version == kToolVersion);
        CHECK(!e.timestamp.empty());
        CHECK(cat.get(CatalogKey{"la", "pid-1", 3, std::nullopt}).has_value());
        CHECK(!cat.get(CatalogKey{"la", "pid-2", 3, std::nullopt}).has_value());
    }
    // reopened from disk
    Catalog cat2(path);
    auto got = cat2.get(CatalogKey{"la", "pid-1", 3, std::nullopt});
    REQUIRE(got.has_value());
    CHECK(got->value == 3);
    auto loaded = cat2.load_witness(got->witness_ref);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == wit);
    CHECK(!cat2.load_witness("no-such-blob").has_value());
}

TEST_CASE("catalog: the stronger claim survives") {
    TempDir tmp;
    Catalog cat(tmp.file("catalog.json"));
    cat.put(make_entry("tr", "pid-1", 4, 5, "lower_bound_only"), std::nullopt);
    // larger lower bound wins
    auto e = cat.put(make_entry("tr", "pid-1", 4, 6, "lower_bound_only"), std::nullopt);
    CHECK(e.value == 6);
    // weaker re-put is a no-op
    e = cat.put(make_entry("tr", "pid-1", 4, 4, "lower_bound_only"), std::nullopt);
    CHECK(e.value == 6);
    // exact beats any lower bound, even a numerically larger one
    e = cat.put(make_entry("tr", "pid-1", 4, 5, "exact"), std::nullopt);
    CHECK(e.value == 5);
    CHECK(e.status == "exact");
    e = cat.put(make_entry("tr", "pid-1", 4, 7, "lower_bound_only"), std::nullopt);
    CHECK(e.status == "exact");
    CHECK(e.value == 5);
    // re-putting the same exact claim is fine
    e = cat.put(make_entry("tr", "pid-1", 4, 5, "exact"), std::nullopt);
    CHECK(e.value == 5);
    // a disagreeing exact claim is an integrity error
    CHECK_THROWS_AS(cat.put(make_entry("tr", "pid-1", 4, 9, "exact"), std::nullopt),
                    IntegrityError);
}

TEST_CASE("catalog merge: union, idempotent, blobs copied") {
    TempDir tmp;
    std::string a = tmp.file("a.json"), b = tmp.file("b.json");
    Family wa = Family::from_sets(3, {{1}});
    {
        Catalog ca(a);
        ca.put(make_entry("la", "pid-1", 3, 3, "exact"), wa);
        ca.put(make_entry("la", "pid-2", 3, 4, "lower_bound_only"), std::nullopt);
        Catalog cb(b);
        cb.put(make_entry("la", "pid-2", 3, 6, "exact"), std::nullopt);
        cb.put(make_entry("tr", "pid-3", 4, 7, "exact"), std::nullopt);
    }
    std::string out = tmp.file("merged.json");
    catalog_merge(a, b, out);
    Catalog m(out);
    CHECK(m.entries().size() == 3);
    CHECK(m.get(CatalogKey{"la", "pid-1", 3, std::nullopt})->value == 3);
    CHECK(m.get(CatalogKey{"la", "pid-2", 3, std::nullopt})->status == "exact");
    CHECK(m.get(CatalogKey{"tr", "pid-3", 4, std::nullopt})->value == 7);
    // the witness blob followed the merge
    auto w = m.load_witness(m.get(CatalogKey{"la", "pid-1", 3, std::nullopt})->witness_ref);
    REQUIRE(w.has_value());
    CHECK(*w == wa);

    // merging a file with itself changes nothing
    std::string out2 = tmp.file("self.json");
    catalog_merge(a, a, out2);
    CHECK(Catalog(out2).entries().size() == 2);

    // conflicting exact claims refuse to merge
    std::string c = tmp.file("c.json");
    {
        Catalog cc(c);
        cc.put(make_entry("tr", "pid-3", 4, 8, "exact"), std::nullopt);
    }
    CHECK_THROWS_AS(catalog_merge(b, c, tmp.file("bad.json")), IntegrityError);
}

TEST_CASE("fnv1a64 hash is frozen") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("hello") == "a430d84680aabd0b");
}

TEST_CASE("certificates replay without the solver") {
    ExtremalResult res = solve_la(4, butterfly());
    Certificate cert;
    cert.kind = "la";
    cert.n = 4;
    cert.value = res.value;
    cert.status = res.status;
    cert.poset = butterfly();
    cert.family = res.witness;
    VerifyReport rep = verify_certificate(cert);
    CHECK(rep.pass);
    CHECK(rep.solver_trusted_upper);  // maximality is the solver's word
    CHECK(rep.failure.empty());

    // corrupt the witness: claim one more member than it has
    Certificate bad = cert;
    bad.value += 1;
    VerifyReport brep = verify_certificate(bad);
    CHECK(!brep.pass);
    CHECK(!brep.failure.empty());

    // corrupt it differently: a witness that is not P-free
    Certificate hostile = cert;
    hostile.family = levels_at_most(4, 4);
    hostile.value = 16;
    CHECK(!verify_certificate(hostile).pass);

    // json round-trip preserves the verdict
    Certificate back = certificate_from_json(certificate_to_json(cert));
    CHECK(back.kind == cert.kind);
    CHECK(back.value == cert.value);
    CHECK(verify_certificate(back).pass);
}

TEST_CASE("tr and tr_l certificates use the trace predicates") {
    ExtremalResult res = solve_tr(4, butterfly());
    Certificate cert;
    cert.kind = "tr";
    cert.n = 4;
    cert.value = res.value;
    cert.status = res.status;
    cert.poset = butterfly();
    cert.family = res.witness;
    CHECK(verify_certificate(cert).pass);

    cert.kind = "tr_l";
    cert.l = 3;
    ExtremalResult rl = solve_tr_l(4, 3, butterfly());
    cert.value = rl.value;
    cert.family = rl.witness;
    CHECK(verify_certificate(cert).pass);
    cert.l.reset();
    CHECK(!verify_certificate(cert).pass);
}

TEST_CASE("arrow certificates: counterexamples replay, 'holds' is flagged") {
    ArrowResult cex = arrow(5, 9, 3, 7);
    REQUIRE(!cex.holds);
    Certificate cert;
    cert.kind = "arrow";
    cert.n = 5;
    cert.m = 9;
    cert.k = 3;
    cert.l = 7;
    cert.value = 0;
    cert.status = "exact";
    cert.family = cex.counterexample;
    VerifyReport rep = verify_certificate(cert);
    CHECK(rep.pass);
    CHECK(!rep.solver_trusted_upper);

    Certificate holds = cert;
    holds.value = 1;
    holds.family.reset();
    VerifyReport hrep = verify_certificate(holds);
    CHECK(hrep.pass);
    CHECK(hrep.solver_trusted_upper);

    // a fake counterexample must fail the trace check
    Certificate fake = cert;
    fake.l = 4;  // (5,9) -> (3,4) actually holds, so traces reach 4
    CHECK(!verify_certificate(fake).pass);
}

TEST_CASE("certificate_for_entry wires catalog entries to replays") {
    TempDir tmp;
    Catalog cat(tmp.file("catalog.json"));
    ExtremalResult res = solve_la(4, butterfly());
    CatalogEntry e = make_entry("la", poset_canonical_id(butterfly()), 4,
                                res.value, res.status);
    e = cat.put(e, res.witness);
    Certificate cert =
        certificate_for_entry(e, butterfly(), cat.load_witness(e.witness_ref));
    CHECK(verify_certificate(cert).pass);

    // arrow entries carry m and k in the method note
    CatalogEntry ae = make_entry("arrow", "m9k3", 5, 0, "exact");
    ae.key.l = 7;
    ae.method_note = "m=9 k=3";
    ArrowResult cex = arrow(5, 9, 3, 7);
    ae = cat.put(ae, cex.counterexample);
    Certificate acert =
        certificate_for_entry(ae, butterfly(), cat.load_witness(ae.witness_ref));
    CHECK(acert.m == 9);
    CHECK(acert.k == 3);
    CHECK(!acert.poset.has_value());
    CHECK(verify_certificate(acert).pass);
}

TEST_CASE("conjecture probe reports finite data points") {
    ProbeReport rep = probe_conjecture_1_5(butterfly(), 5, 1);
    CHECK(rep.n == 5);
    CHECK(rep.k == 1);
    CHECK(rep.l == 4);
    CHECK(rep.tr_value == 10);  // the full second level of [5]
    CHECK(rep.middle_binomial == 10);
    CHECK(rep.ratio == doctest::Approx(1.0));
    CHECK(rep.e_value == 2);
    CHECK(rep.predicted == doctest::Approx(1.0));
    CHECK(rep.note.find("finite data point") != std::string::npos);

    ProbeReport vp = probe_conjecture_1_5(vee(2), 5, 1);
    CHECK(vp.e_value == 1);
    CHECK(vp.predicted == doctest::Approx(0.0));
    CHECK(vp.ratio ==
          doctest::Approx(static_cast<double>(vp.tr_value) / 10.0));

    CHECK_THROWS_AS(probe_conjecture_1_5(butterfly(), 5, 5), UsageError);

    std::string j = probe_report_to_json(rep);
    CHECK(j.find("\"conjecture\": \"1.5\"") != std::string::npos);
    CHECK(j.find("not evidence of the limit") != std::string::npos);
}
