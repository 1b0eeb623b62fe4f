#pragma once

#include "starspec/starspec.hpp"

#include <random>

namespace starspec::testing {

inline Rational random_positive(std::mt19937_64& rng, int num_max = 40, int den_max = 12)
{
    std::uniform_int_distribution<int> num(1, num_max), den(1, den_max);
    return Rational(num(rng), den(rng));
}

/// Strictly decreasing positive spectra for the given branch lengths, gamma positive.
inline SpectralInstance random_instance(const std::vector<int>& lengths, std::mt19937_64& rng)
{
    SpectralInstance inst;
    for (int m : lengths) {
        QVec a(m);
        Rational x = 0;
        for (int i = m - 1; i >= 0; --i) {
            x += random_positive(rng);
            a[i] = x;
        }
        inst.branches.push_back(a);
    }
    inst.gamma = random_positive(rng, 120);
    return inst;
}

/// chi = D_k^{-1} v with v_1..v_6 > 0 random and v_7 = 0, retried until the
/// spectra are valid. Every such chi satisfies the closed-form criterion.
inline SpectralInstance cone_sample(Family f, int k, std::mt19937_64& rng)
{
    QMatrix Di = inverse(closed_form_matrix_e6(f, k));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        QVec v(7, 0);
        for (int i = 0; i < 6; ++i) v[i] = random_positive(rng);
        SpectralInstance inst = SpectralInstance::from_chi({2, 2, 2}, Di * v);
        if (instance_problem(e6_graph(), inst).empty()) return inst;
    }
    throw std::runtime_error("cone sampling found no valid instance");
}

/// Like cone_sample but with row `row` of D_k chi set to `value`.
inline std::optional<SpectralInstance> cone_sample_with_row(Family f, int k, int row, const Rational& value, std::mt19937_64& rng)
{
    QMatrix Di = inverse(closed_form_matrix_e6(f, k));
    for (int attempt = 0; attempt < 200; ++attempt) {
        QVec v(7, 0);
        for (int i = 0; i < 6; ++i) v[i] = random_positive(rng);
        v[row] = value;
        SpectralInstance inst = SpectralInstance::from_chi({2, 2, 2}, Di * v);
        if (instance_problem(e6_graph(), inst).empty()) return inst;
    }
    return std::nullopt;
}

/// Random valid E6~ instance with gamma chosen so that the trace identity
/// holds in dimension d.
inline SpectralInstance trace_balanced_sample(const IVec& d, std::mt19937_64& rng)
{
    GeneralizedDimension n = n_from_dim(e6_graph(), d);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        SpectralInstance inst = random_instance({2, 2, 2}, rng);
        inst.gamma = 0;
        Rational s = trace_defect(inst, n);
        inst.gamma = s / n.n0;
        if (inst.gamma > 0) return inst;
    }
    throw std::runtime_error("no trace-balanced sample");
}

/// Random Horn-feasible instance on the E6~ hyperplane.
inline SpectralInstance horn_feasible_sample(std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 100000; ++attempt) {
        SpectralInstance inst = random_instance({2, 2, 2}, rng);
        Rational s = 0;
        for (auto& b : inst.branches) s += b[0] + b[1];
        inst.gamma = s / 3;
        if (horn_check_e6(inst).feasible()) return inst;
    }
    throw std::runtime_error("no Horn-feasible sample");
}

} // namespace starspec::testing
