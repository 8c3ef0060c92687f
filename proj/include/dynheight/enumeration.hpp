#pragma once

#include "dynheight/pcf.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dynheight {

struct EnumerationConfig {
    int n_arch = 14;                        // archimedean sieve depth
    int n_padic = 14;                       // p-adic sieve depth
    mpfr_prec_t precision = 128;
    std::vector<unsigned long> primes = {2, 3};
    bool strict = true;                     // fail on any Undecided survivor
    int workers = 0;                        // 0 = hardware concurrency
};

struct CandidateReport {
    long a = 0, b = 0;  // A = a/4, B = b/8
    mpq_class A, B;
    SieveStage stage = SieveStage::Survived;
    unsigned long witness_p = 0;
    int witness_iterate = 0;
    VerdictKind verdict = VerdictKind::Undecided;  // set for sieve survivors
    int orbit_length = 0;                           // total recorded points (Pcf)
};

struct StageCounts {
    int grid = 0;
    int arch_eliminated = 0;
    int arch_survivors = 0;
    std::vector<std::pair<unsigned long, int>> padic_eliminated;
    int certified_pcf = 0;
    int not_pcf = 0;
    int undecided = 0;
};

struct EnumerationResult {
    std::vector<CandidateReport> reports;  // grid order: a ascending, then b
    StageCounts counts;
    // final PCF pairs including the B -> -B twins, sorted by (A, B)
    std::vector<std::pair<mpq_class, mpq_class>> pcf_pairs;
    EnumerationConfig config;
};

/// The 41 x 95 candidate grid (a, b) with A = a/4, B = b/8 >= 0.
std::vector<std::pair<long, long>> cubic_candidate_grid();

EnumerationResult enumerate_pcf_cubics(const EnumerationConfig& config = {});

/// The quadratic pipeline: integral candidates |c| <= 2, certified.
std::vector<mpq_class> enumerate_pcf_quadratics();

enum class Family { Unicritical, SuperattractingZero };

/// z^d + c, or z^d - (dc/(d-1)) z^{d-1}.
PolySpec family_member(Family fam, int d, const mpq_class& c);

struct FamilyRow {
    mpq_class c;
    DyadicInterval h_crit, h_mc, ratio;
    bool decided = false;
    bool pcf = false;
};

std::vector<FamilyRow> family_scan(Family fam, int d, const std::vector<mpq_class>& cs,
                                   const HeightBudget& budget = {});

std::string enumeration_csv(const EnumerationResult&);
std::string enumeration_summary_json(const EnumerationResult&);
std::string family_csv(const std::vector<FamilyRow>&);

} // namespace dynheight
