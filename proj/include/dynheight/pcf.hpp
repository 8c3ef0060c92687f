#pragma once

#include "dynheight/local_heights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dynheight {

enum class VerdictKind { Pcf, NotPcf, Undecided };

std::string to_string(VerdictKind k);

/// Finite forward orbit of one critical point: points of the tail followed
/// by one full cycle, starting at the critical point itself.
struct OrbitRecord {
    QuadExt critical_point;
    int multiplicity = 1;
    std::vector<QuadExt> points;
    int tail_length = 0;
    int cycle_length = 1;
};

/// Replayable escape certificate: |f^N(c)|_v exceeds the escape radius.
struct EscapeWitness {
    QuadExt critical_point;
    Place place;
    int iterate = 0;
    std::string threshold;  // human-readable description of the bound crossed
};

struct PcfVerdict {
    VerdictKind kind = VerdictKind::Undecided;
    std::vector<OrbitRecord> orbits;        // populated when kind == Pcf
    std::optional<EscapeWitness> witness;   // populated when kind == NotPcf
    int iterations = 0;
};

/// Where a grid candidate was eliminated, if anywhere.
enum class SieveStage { Survived, Integrality, ArchEscape, PadicEscape };

struct SieveReport {
    mpq_class A, B;  // candidate z^3 + Az + B
    SieveStage eliminated_by = SieveStage::Survived;
    unsigned long p = 0;  // failing/witness prime for Integrality, PadicEscape
    int iterate = 0;      // witness N for the escape sieves
};

/// Denominator test from the ultrametric bounds: den(A) | 4 and den(B) | 8.
SieveReport integrality_sieve(const mpq_class& A, const mpq_class& B);

/// Interval iteration of both critical orbits of z^3 + Az + B against the
/// archimedean cubic escape radius.  Inconclusive comparisons refine up to
/// the budget; a candidate is only eliminated on a certified crossing.
SieveReport arch_escape_sieve(const mpq_class& A, const mpq_class& B, int n_max,
                              const HeightBudget& budget = {});

/// Exact p-adic escape test on the critical orbits via Newton-polygon
/// valuations at both places of Q(sqrt(D)) over p.
SieveReport padic_escape_sieve(const mpq_class& A, const mpq_class& B, unsigned long p,
                               int n_max, const HeightBudget& budget = {});

/// Re-run a recorded escape witness; true iff the crossing still certifies.
bool replay_sieve_witness(const SieveReport& report, const HeightBudget& budget = {});

/// Tri-state PCF certification from exact critical orbits: Pcf on exact
/// repetition of every orbit, NotPcf on any certified escape.
PcfVerdict certify_pcf(const PolySpec& F, const HeightBudget& budget = {});

/// Diagnostic for the critical-vs-monic-centred height comparison.
struct RatioReport {
    DyadicInterval h_crit;
    DyadicInterval h_mc;
    DyadicInterval ratio;  // meaningful when h_mc is bounded away from 0
    bool decided = false;
    bool pcf_point = false;  // h_crit certified 0; ratio reported as exact 0
};

RatioReport theorem1_ratio(const PolySpec& F, const HeightBudget& budget = {});

/// JSON-lines records: {A, B, verdict, witness?, orbit?, iterations}.
std::string sieve_report_json(const SieveReport& report);
std::string verdict_json(const mpq_class& A, const mpq_class& B, const PcfVerdict& v);
std::string verdict_json(const PolySpec& F, const PcfVerdict& v);

} // namespace dynheight
