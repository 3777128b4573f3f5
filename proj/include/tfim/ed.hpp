#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tfim/chain.hpp"

namespace tfim {

// Even-parity sector of the periodic spin chain in the sigma^x eigenbasis.
// A basis state is a bit string with bit j set when sigma^x_j = -1.
class EdChain {
public:
    explicit EdChain(int L);

    int L() const { return L_; }
    std::size_t dim() const { return states_.size(); }
    const std::vector<std::uint32_t>& states() const { return states_; }

    // H psi for the given site fields and coupling J.
    void apply(const std::vector<double>& fields, double J, const Eigen::VectorXcd& x,
               Eigen::VectorXcd& out) const;
    Eigen::MatrixXd dense(const std::vector<double>& fields, double J) const;

    // <sigma^x_j> for all sites.
    std::vector<double> sigma_x(const Eigen::VectorXcd& psi) const;
    double parity(const Eigen::VectorXcd& psi) const;  // <prod sigma^x>

private:
    int L_;
    std::vector<std::uint32_t> states_;
    std::vector<std::int32_t> index_;     // full 2^L -> sector index, -1 outside
    std::vector<std::int32_t> bond_to_;   // dim * L: image of each state under the flip of bond j
};

struct EdGround {
    double energy;
    Eigen::VectorXd state;
};

EdGround ed_ground(const EdChain& chain, double h, double J = 1.0);

struct EdOptions {
    int steps_per_period = 4096;
    int samples_per_period = 64;
};

struct EdSeries {
    std::vector<double> t;
    std::vector<double> m;    // (1/L) sum <sigma^x_j>
    std::vector<double> Ml;   // sum over the first l sites
    std::vector<double> e0;   // <H0>/L
    std::vector<double> norm;
    std::vector<double> parity;
};

EdSeries ed_evolve(const DriveConfig& cfg, int n_periods, const EdOptions& opt = {});

struct LehmannLine {
    double omega;
    double weight;  // |<n|A|0>|^2
};

// Lines of A = M_l from the ground state (h = 1), weights below cutoff dropped.
std::vector<LehmannLine> ed_susceptibility(int L, int l, double cutoff = 1e-14);

}  // namespace tfim
