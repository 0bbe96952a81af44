#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "pscub/polymer.hpp"

namespace pscub {

// Dense per-polymer vector indexed like the system; plays the role of z, ρ or μ.
using FugacityVector = std::vector<double>;
using ComplexFugacity = std::vector<std::complex<double>>;

FugacityVector negated(const FugacityVector& v);
FugacityVector scaled(const FugacityVector& v, double s);

// Largest volume the independent-set enumeration accepts.
constexpr int kMaxVolume = 40;

double partition_function(const PolymerSystem& sys, const Volume& lambda, const FugacityVector& z);
std::complex<double> partition_function(const PolymerSystem& sys, const Volume& lambda,
                                        const ComplexFugacity& z);

double one_polymer_ratio(const PolymerSystem& sys, const Volume& lambda, int g,
                         const FugacityVector& z);
double reduced_correlation(const PolymerSystem& sys, const Volume& lambda,
                           const std::vector<int>& pins, const FugacityVector& z);
double pinned_connected_function(const PolymerSystem& sys, const Volume& lambda, int g,
                                 const FugacityVector& z);
std::complex<double> pinned_connected_function(const PolymerSystem& sys, const Volume& lambda,
                                               int g, const ComplexFugacity& z);
double free_energy(const PolymerSystem& sys, const Volume& lambda, const FugacityVector& z);

// Brute force over connected spanning subgraphs.
std::int64_t ursell_count(const Cluster& g, int cap = -1);
double ursell(const Cluster& g, int cap = -1);
// Same value through the subset recursion C(S) = F(S) - Σ C(T)F(S\T); used by the series.
std::int64_t ursell_subset_recursion(const Cluster& g);

double fundamental_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                     const FugacityVector& z);

constexpr int kMaxSeriesOrder = 6;

double truncated_pinned_series(const PolymerSystem& sys, int g, const FugacityVector& rho,
                               int n_max, std::optional<int> exclude = std::nullopt);
// All partial sums n = 0..n_max in one pass.
std::vector<double> pinned_series_partial_sums(const PolymerSystem& sys, int g,
                                               const FugacityVector& rho, int n_max,
                                               std::optional<int> exclude = std::nullopt);

bool alternating_sign_check(const Cluster& g);

bool monotonicity_check(const PolymerSystem& sys, const Volume& lambda, const Volume& lambda_sub,
                        int g, const FugacityVector& rho, const FugacityVector& nu);

// Identity residuals. The chain removes `order` from Λ one polymer at a time.
// Relative error of Π ratio(Λ_k, ξ_k) against Ξ_Λ.
double telescoping_relative_error(const PolymerSystem& sys, const Volume& lambda,
                                  const std::vector<int>& order, const FugacityVector& z);
// pinned(Λ,γ) minus the product of inverse one-polymer ratios along Γ*(γ)∩Λ.
double product_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                 const FugacityVector& z);
// log ratio(Λ,γ) minus z_γ ∫_0^1 pinned(Λ,γ, z with z_γ scaled by α) dα.
double integral_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                  const FugacityVector& z);

// Ξ_Λ(z) for every Λ ⊆ P as a table over subset masks (|P| ≤ 24).
std::vector<double> all_volume_partition_functions(const PolymerSystem& sys,
                                                   const FugacityVector& z);
// True iff Ξ_Λ(-ρ) > 0 for every Λ ⊆ P.
bool admissible(const PolymerSystem& sys, const FugacityVector& rho);

Volume volume_from_mask(std::uint64_t mask);
std::uint64_t mask_from_volume(const Volume& v);

// OpenMP counterparts of the enumeration kernels; the functions above are the reference.
std::int64_t ursell_count_parallel(const Cluster& g, int cap = -1);
std::int64_t count_connected_spanning_parallel(const Cluster& g, int cap = -1);
std::int64_t count_connected_spanning(const Cluster& g, int cap = -1);
double partition_function_subsets(const PolymerSystem& sys, const Volume& lambda,
                                  const FugacityVector& z);
double partition_function_subsets_parallel(const PolymerSystem& sys, const Volume& lambda,
                                           const FugacityVector& z);

}  // namespace pscub
