#include "spdgeo/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "spdgeo/errors.hpp"

namespace spdgeo {

namespace {

std::vector<double> canon_direction(std::vector<double> v) {
    const double m = *std::min_element(v.begin(), v.end());
    for (double& x : v) x -= m;
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 1e-300)
        for (double& x : v) x /= norm;
    return v;
}

// det-normalize a Literal form and report its sorted log-eigenvalues
std::vector<double> gauge_fix_form(Matrix& form) {
    EigenResult e = jacobi_eigen(form);
    double logDet = 0.0;
    for (double v : e.values) logDet += std::log(v);
    const double scale = std::exp(-logDet / form.rows());
    form = form * scale;
    std::vector<double> logs(e.values.size());
    for (size_t i = 0; i < logs.size(); ++i)
        logs[i] = std::log(e.values[i]) - logDet / form.rows();
    return logs;
}

TreePartition blocks_tree(int n, const std::vector<Block>& blocks) {
    std::vector<Block> sets;
    Block full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    sets.push_back(full);
    for (const Block& b : blocks) sets.push_back(b);
    return TreePartition(n, sets);
}

std::vector<Block> velocity_blocks(const Velocity& vel) {
    std::vector<Block> blocks;
    int next = 1;
    for (int len : vel.blockSizes) {
        Block b(len);
        for (int i = 0; i < len; ++i) b[i] = next++;
        blocks.push_back(b);
    }
    return blocks;
}

} // namespace

BoundaryPoint geodesic_boundary_point(const Geodesic& gamma, BoundaryKind kind) {
    if (gamma.model() != Model::PE)
        throw ModelMismatch("hybrid boundary points live over the PE model");
    BoundaryPoint p;
    p.kind = kind;

    SatakePoint satake = geodesic_satake_limit(gamma);
    const Velocity& vel = gamma.velocity;
    const int n = gamma.n();

    if (vel.blockSizes.size() <= 1) {
        p.interior = true;
        p.satake = satake;
        return p;
    }

    const std::vector<Block> blocks = velocity_blocks(vel);
    switch (kind) {
        case BoundaryKind::Ass:
            p.assIndex = blocks_tree(n, blocks);
            break;
        case BoundaryKind::Karp: {
            Partition fine;
            fine.n = n;
            fine.blocks = blocks;
            fine.canonicalize();
            p.karpIndex = LeveledTreePartition({Partition::trivial(n), fine});
            break;
        }
        case BoundaryKind::Martin:
            p.martinCodims = vel.interior_codims();
            break;
    }

    p.chamber.rays.push_back(canon_direction(vel.values));

    // gauge: forms become Literal with determinant 1, so each block's chamber
    // values are the sum-zero log-semiaxes
    p.satake.flag = satake.flag;
    for (SubquotientForm& f : satake.forms) {
        Matrix m = f.matrix;
        std::vector<double> logs = gauge_fix_form(m);
        p.chamber.blockValues.push_back(logs);
        p.satake.forms.push_back(SubquotientForm::literal(std::move(m)));
    }
    return p;
}

BoundaryPoint sequence_boundary_point(const GrowthVector& eigen,
                                      const SatakePoint& frameLimit, BoundaryKind kind,
                                      double tol) {
    const int n = eigen.size();
    // eventually non-increasing: each difference has non-negative leading term
    for (int i = 0; i + 1 < n; ++i) {
        Polynomial d = eigen.coords[i] - eigen.coords[i + 1];
        if (!d.is_zero() && d.c.back() < 0)
            throw NotSorted("growth coordinates must be eventually non-increasing");
    }

    BoundaryPoint p;
    p.kind = kind;

    KarpLimit kl = karp_limit(eigen);
    if (kl.leveled.tau() == 0) {
        p.interior = true;
        p.satake = frameLimit;
        return p;
    }

    TreePartition tree = karp_to_pass(kl.leveled);
    switch (kind) {
        case BoundaryKind::Ass:
            p.assIndex = tree;
            break;
        case BoundaryKind::Karp:
            p.karpIndex = kl.leveled;
            break;
        case BoundaryKind::Martin: {
            // first-level split carries the visible direction
            const Partition& first = kl.leveled.levels()[1];
            int cum = 0;
            for (size_t b = 0; b + 1 < first.blocks.size(); ++b) {
                cum += static_cast<int>(first.blocks[b].size());
                p.martinCodims.push_back(cum);
            }
            break;
        }
    }

    for (int j = 0; j < kl.leveled.tau(); ++j) {
        std::vector<double> ray(kl.data[j].values.size());
        for (size_t i = 0; i < ray.size(); ++i)
            ray[i] = static_cast<double>(kl.data[j].values[i]);
        p.chamber.rays.push_back(canon_direction(std::move(ray)));
    }

    // irreducible segments of the index = blocks of the final level partition
    const Partition& finest = kl.leveled.levels().back();
    std::vector<int> segmentCodims;
    {
        int cum = 0;
        for (size_t b = 0; b + 1 < finest.blocks.size(); ++b) {
            cum += static_cast<int>(finest.blocks[b].size());
            segmentCodims.push_back(cum);
        }
    }
    if (frameLimit.flag.codims() != segmentCodims)
        throw SemiaxisMismatch("Satake flag codims disagree with the growth index");

    const std::vector<Rational>& finalPoint = kl.data.back().values;
    p.satake.flag = frameLimit.flag;
    int offset = 0;
    for (size_t b = 0; b < finest.blocks.size(); ++b) {
        const int len = static_cast<int>(finest.blocks[b].size());
        std::vector<double> want(len);
        double mean = 0.0;
        for (int i = 0; i < len; ++i) {
            want[i] = static_cast<double>(finalPoint[offset + i]);
            mean += want[i];
        }
        mean /= len;
        for (double& w : want) w -= mean; // sum-zero gauge

        Matrix m = frameLimit.forms[b].matrix;
        std::vector<double> logs = gauge_fix_form(m);
        for (int i = 0; i < len; ++i)
            if (std::abs(logs[i] - want[i]) > tol)
                throw SemiaxisMismatch("form semiaxes disagree with the growth data");
        p.chamber.blockValues.push_back(want);
        p.satake.forms.push_back(SubquotientForm::literal(std::move(m)));
        offset += len;
    }
    return p;
}

} // namespace spdgeo
