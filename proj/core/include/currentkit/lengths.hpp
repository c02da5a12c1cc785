#pragma once

#include <Eigen/Dense>
#include <vector>

#include "currentkit/engine.hpp"

namespace currentkit {

enum class GroupType { special_linear, symplectic };

// Representation of the surface group into SL(n,R) or Sp(2n,R),
// one matrix per generator.
struct MatrixRep {
    GroupType type = GroupType::special_linear;
    int dim = 0;
    std::vector<Eigen::MatrixXd> generator_images;
};

// Validates determinants, the symplectic form for Sp, and relators.
MatrixRep make_matrix_rep(const Surface& s, GroupType type, std::vector<Eigen::MatrixXd> images);

Eigen::MatrixXd evaluate_rep(const MatrixRep& rep, const Word& w);

// Sorted log-moduli of the eigenvalues: the full vector for SL (sums to
// zero), the nonnegative half of the paired spectrum for Sp.
struct ChamberVector {
    std::vector<double> x;
};

ChamberVector chamber_vector(const Eigen::MatrixXd& m, GroupType type);

// ||chamber_vector||: sum of entries for Sp, spread x1 - xn for SL.
double length_L(const Eigen::MatrixXd& m, GroupType type);

// The (n-1)-st symmetric power of the generator matrices, binomially
// normalized; a representation into SL(n,R).
MatrixRep sym_power_rep(const Surface& s, int n);
Eigen::MatrixXd sym_power_matrix(const MobiusMap& m, int n);

struct LengthTable {
    std::vector<std::pair<ConjClass, double>> entries;
    double normalization = 1.0; // the family sum the raw lengths were divided by

    double value_of(const ConjClass& c) const; // throws when absent
    bool has(const ConjClass& c) const;
};

std::vector<ConjClass> default_filling_family(const Surface& s);

LengthTable length_table(const Surface& s, const MatrixRep& rep,
                         const std::vector<ConjClass>& classes,
                         const std::vector<ConjClass>& filling_family);

// Raw (unnormalized) table helper used by fixtures and the CLI.
LengthTable raw_length_table(const Surface& s, const MatrixRep& rep,
                             const std::vector<ConjClass>& classes);

enum class LengthPieceLabel { zero, lamination_like, positive_systole };

struct TrichotomyPiece {
    std::vector<ConjClass> members;
    LengthPieceLabel label = LengthPieceLabel::zero;
    double min_positive = 0.0;
};

struct TrichotomyReport {
    std::vector<ConjClass> specials;
    std::vector<TrichotomyPiece> pieces;
    int candidate_radius = 0;
};

// Decomposition driven by a length table in place of an intersection
// function: special classes via the vanishing-with-positive-neighbors
// predicate, side partition of the remaining candidates, per-piece label.
TrichotomyReport trichotomy_classify(const Surface& s, const LengthTable& table, int radius);

} // namespace currentkit
