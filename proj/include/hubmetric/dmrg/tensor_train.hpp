// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file tensor_train.hpp
 * @brief Block-sparse matrix product state with conserved (N_up, N_down).
 *
 * Bond k sits left of site k; its labels are the particle numbers
 * accumulated on sites 0..k-1. A site tensor stores one dense block per
 * (left sector a, physical state s); the right sector is fixed by
 * conservation, qn_right = qn_left(a) + qn(s).
 */

#pragma once

#include "hubmetric/dmrg/quantum_number.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace hubmetric::dmrg {

class SiteTensor {
public:
    SiteTensor() = default;

    SiteTensor(Bond left, Bond right) : left_(std::move(left)), right_(std::move(right)) {
        target_.assign(static_cast<std::size_t>(left_.size()) * kPhysDim, -1);
        blocks_.resize(target_.size());
        for (int a = 0; a < left_.size(); ++a)
            for (int s = 0; s < kPhysDim; ++s) {
                const int b = right_.find(left_.qns[a] + kSiteQN[s]);
                target_[slot(a, s)] = b;
                if (b >= 0) blocks_[slot(a, s)] = Eigen::MatrixXd::Zero(left_.dims[a], right_.dims[b]);
            }
    }

    [[nodiscard]] const Bond& left() const noexcept { return left_; }
    [[nodiscard]] const Bond& right() const noexcept { return right_; }

    /// Right sector reached from (a, s), or -1.
    [[nodiscard]] int target(int a, int s) const noexcept { return target_[slot(a, s)]; }

    [[nodiscard]] Eigen::MatrixXd& block(int a, int s) noexcept { return blocks_[slot(a, s)]; }
    [[nodiscard]] const Eigen::MatrixXd& block(int a, int s) const noexcept { return blocks_[slot(a, s)]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double n = 0.0;
        for (const auto& b : blocks_) n += b.squaredNorm();
        return n;
    }

    void scale(double f) {
        for (auto& b : blocks_) b *= f;
    }

    /// sum_{(a,s)->b} A^T A == 1 for every right sector b.
    [[nodiscard]] double left_orthonormality_error() const {
        double err = 0.0;
        for (int b = 0; b < right_.size(); ++b) {
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(right_.dims[b], right_.dims[b]);
            for (int a = 0; a < left_.size(); ++a)
                for (int s = 0; s < kPhysDim; ++s)
                    if (target(a, s) == b) acc.noalias() += block(a, s).transpose() * block(a, s);
            err = std::max(err, (acc - Eigen::MatrixXd::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff());
        }
        return err;
    }

    /// sum_s A A^T == 1 for every left sector a.
    [[nodiscard]] double right_orthonormality_error() const {
        double err = 0.0;
        for (int a = 0; a < left_.size(); ++a) {
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(left_.dims[a], left_.dims[a]);
            for (int s = 0; s < kPhysDim; ++s)
                if (target(a, s) >= 0) acc.noalias() += block(a, s) * block(a, s).transpose();
            err = std::max(err, (acc - Eigen::MatrixXd::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff());
        }
        return err;
    }

private:
    [[nodiscard]] std::size_t slot(int a, int s) const noexcept {
        return static_cast<std::size_t>(a) * kPhysDim + static_cast<std::size_t>(s);
    }

    Bond left_;
    Bond right_;
    std::vector<int> target_;
    std::vector<Eigen::MatrixXd> blocks_;
};

/// Sectors on bond k compatible with reaching (N_up, N_down) at bond L.
[[nodiscard]] inline std::vector<QN> reachable_sectors(const ModelSpec& spec, int k) {
    std::vector<QN> out;
    const int rest = spec.L - k;
    for (int u = std::max(0, spec.n_up - rest); u <= std::min(k, spec.n_up); ++u)
        for (int d = std::max(0, spec.n_down - rest); d <= std::min(k, spec.n_down); ++d) out.push_back({u, d});
    return out;
}

struct TensorTrainState {
    ModelSpec spec;
    std::vector<SiteTensor> sites;
    int center = 0;  ///< orthogonality center: sites < center left-, sites > center right-orthonormal

    [[nodiscard]] int length() const noexcept { return static_cast<int>(sites.size()); }

    /// Total dimension of bonds 0..L.
    [[nodiscard]] std::vector<int> bond_dimensions() const {
        std::vector<int> d;
        d.reserve(sites.size() + 1);
        for (const auto& s : sites) d.push_back(s.left().total());
        if (!sites.empty()) d.push_back(sites.back().right().total());
        return d;
    }

    /// Largest deviation from mixed-canonical form about `center`, including the norm.
    [[nodiscard]] double canonical_error() const {
        double err = 0.0;
        for (int i = 0; i < length(); ++i) {
            if (i < center) err = std::max(err, sites[i].left_orthonormality_error());
            if (i > center) err = std::max(err, sites[i].right_orthonormality_error());
        }
        err = std::max(err, std::abs(sites[center].norm_squared() - 1.0));
        return err;
    }

    [[nodiscard]] bool is_canonical(double tol = 1e-10) const {
        return !sites.empty() && center >= 0 && center < length() && canonical_error() <= tol;
    }
};

namespace detail {

/// Bond with every reachable sector at the given dimension.
inline Bond uniform_bond(const ModelSpec& spec, int k, int dim) {
    Bond b;
    b.qns = reachable_sectors(spec, k);
    b.dims.assign(b.qns.size(), dim);
    return b;
}

/// LQ-factorizes site i per left sector, leaving it right-orthonormal and
/// absorbing the L factor into site i-1. Sectors of rank zero vanish.
inline void right_orthonormalize_site(TensorTrainState& psi, int i) {
    SiteTensor& A = psi.sites[i];
    const Bond& lb = A.left();
    const Bond& rb = A.right();
    std::vector<Eigen::MatrixXd> q_rows(lb.size()), r_factor(lb.size());
    Bond new_left;
    for (int a = 0; a < lb.size(); ++a) {
        int cols = 0;
        for (int s = 0; s < kPhysDim; ++s)
            if (A.target(a, s) >= 0) cols += rb.dims[A.target(a, s)];
        const int rank = std::min(cols, lb.dims[a]);
        if (rank == 0) continue;
        Eigen::MatrixXd M(lb.dims[a], cols);
        int off = 0;
        for (int s = 0; s < kPhysDim; ++s) {
            const int b = A.target(a, s);
            if (b < 0) continue;
            M.middleCols(off, rb.dims[b]) = A.block(a, s);
            off += rb.dims[b];
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M.transpose());
        const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(cols, rank);
        const Eigen::MatrixXd R = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
        q_rows[a] = Q.transpose();   // rank x cols
        r_factor[a] = R.transpose();  // d_a x rank
        new_left.qns.push_back(lb.qns[a]);
        new_left.dims.push_back(rank);
    }

    SiteTensor B(new_left, rb);
    for (int a = 0; a < lb.size(); ++a) {
        if (q_rows[a].size() == 0) continue;
        const int na = new_left.find(lb.qns[a]);
        int off = 0;
        for (int s = 0; s < kPhysDim; ++s) {
            const int b = A.target(a, s);
            if (b < 0) continue;
            B.block(na, s) = q_rows[a].middleCols(off, rb.dims[b]);
            off += rb.dims[b];
        }
    }

    const SiteTensor& P = psi.sites[i - 1];
    SiteTensor P2(P.left(), new_left);
    for (int a0 = 0; a0 < P.left().size(); ++a0)
        for (int s = 0; s < kPhysDim; ++s) {
            const int old_b = P.target(a0, s);
            const int nb = P2.target(a0, s);
            if (old_b < 0 || nb < 0) continue;
            P2.block(a0, s) = P.block(a0, s) * r_factor[old_b];
        }
    psi.sites[i] = std::move(B);
    psi.sites[i - 1] = std::move(P2);
}

}  // namespace detail

/// Brings the state into right-canonical form with the center (and norm 1) on site 0.
inline void right_canonicalize(TensorTrainState& psi) {
    for (int i = psi.length() - 1; i >= 1; --i) detail::right_orthonormalize_site(psi, i);
    const double n = std::sqrt(psi.sites[0].norm_squared());
    if (!(n > 0.0)) throw SolverError("tensor train has zero norm");
    psi.sites[0].scale(1.0 / n);
    psi.center = 0;
}

/// Random state in the (N_up, N_down) sector, every reachable sector at dimension `dim`.
[[nodiscard]] inline TensorTrainState random_tensor_train(const ModelSpec& spec, std::uint64_t seed, int dim = 1) {
    spec.validate();
    TensorTrainState psi;
    psi.spec = spec;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto bond_dim = [&](int k) { return (k == 0 || k == spec.L) ? 1 : dim; };
    for (int i = 0; i < spec.L; ++i) {
        SiteTensor A(detail::uniform_bond(spec, i, bond_dim(i)), detail::uniform_bond(spec, i + 1, bond_dim(i + 1)));
        for (int a = 0; a < A.left().size(); ++a)
            for (int s = 0; s < kPhysDim; ++s)
                if (A.target(a, s) >= 0)
                    for (Eigen::Index k = 0; k < A.block(a, s).size(); ++k) A.block(a, s).data()[k] = dist(rng);
        psi.sites.push_back(std::move(A));
    }
    right_canonicalize(psi);
    return psi;
}

// ---------------------------------------------------------------------------
// Checkpoint file: "HMTTSTAT" magic, uint32 version, then the state. Native
// byte order; the file is meant for resuming on the machine that wrote it.
// ---------------------------------------------------------------------------

inline constexpr char kCheckpointMagic[8] = {'H', 'M', 'T', 'T', 'S', 'T', 'A', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace detail {

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("checkpoint: truncated file");
    return v;
}

inline void put_bond(std::ostream& out, const Bond& b) {
    put<std::int32_t>(out, b.size());
    for (int k = 0; k < b.size(); ++k) {
        put<std::int32_t>(out, b.qns[k].up);
        put<std::int32_t>(out, b.qns[k].dn);
        put<std::int32_t>(out, b.dims[k]);
    }
}

inline Bond get_bond(std::istream& in) {
    Bond b;
    const auto n = get<std::int32_t>(in);
    if (n < 0 || n > (1 << 20)) throw IoError("checkpoint: corrupt bond header");
    for (int k = 0; k < n; ++k) {
        const int u = get<std::int32_t>(in);
        const int d = get<std::int32_t>(in);
        b.qns.push_back({u, d});
        b.dims.push_back(get<std::int32_t>(in));
    }
    return b;
}

}  // namespace detail

inline void save_checkpoint(const TensorTrainState& psi, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
    }
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open checkpoint '" + tmp.string() + "'");
        out.write(kCheckpointMagic, sizeof kCheckpointMagic);
        detail::put<std::uint32_t>(out, kCheckpointVersion);
        detail::put<std::int32_t>(out, psi.spec.L);
        detail::put<double>(out, psi.spec.t);
        detail::put<double>(out, psi.spec.U);
        detail::put<std::int32_t>(out, psi.spec.n_up);
        detail::put<std::int32_t>(out, psi.spec.n_down);
        detail::put<std::int32_t>(out, psi.center);
        for (const auto& A : psi.sites) {
            detail::put_bond(out, A.left());
            detail::put_bond(out, A.right());
            for (int a = 0; a < A.left().size(); ++a)
                for (int s = 0; s < kPhysDim; ++s)
                    if (A.target(a, s) >= 0) {
                        const auto& m = A.block(a, s);
                        out.write(reinterpret_cast<const char*>(m.data()),
                                  static_cast<std::streamsize>(sizeof(double) * m.size()));
                    }
        }
        if (!out) throw IoError("checkpoint write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

[[nodiscard]] inline TensorTrainState load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) throw IoError("not a tensor-train checkpoint");
    const auto version = detail::get<std::uint32_t>(in);
    if (version != kCheckpointVersion)
        throw IoError("unsupported checkpoint version " + std::to_string(version));
    TensorTrainState psi;
    psi.spec.L = detail::get<std::int32_t>(in);
    psi.spec.t = detail::get<double>(in);
    psi.spec.U = detail::get<double>(in);
    psi.spec.n_up = detail::get<std::int32_t>(in);
    psi.spec.n_down = detail::get<std::int32_t>(in);
    psi.center = detail::get<std::int32_t>(in);
    psi.spec.validate();
    for (int i = 0; i < psi.spec.L; ++i) {
        Bond l = detail::get_bond(in);
        Bond r = detail::get_bond(in);
        SiteTensor A(std::move(l), std::move(r));
        for (int a = 0; a < A.left().size(); ++a)
            for (int s = 0; s < kPhysDim; ++s)
                if (A.target(a, s) >= 0) {
                    auto& m = A.block(a, s);
                    in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(sizeof(double) * m.size()));
                    if (!in) throw IoError("checkpoint: truncated tensor data");
                }
        psi.sites.push_back(std::move(A));
    }
    if (psi.center < 0 || psi.center >= psi.length()) throw IoError("checkpoint: invalid center");
    return psi;
}

}  // namespace hubmetric::dmrg
