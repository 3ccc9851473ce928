#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "podsolid/cases1d.hpp"
#include "podsolid/errors.hpp"
#include "podsolid/pod.hpp"

using namespace podsolid;

namespace {

Eigen::MatrixXd random_dense(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> dist;
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = dist(rng);
    return x;
}

// Two-sided Jacobi SVD, independent of the bidiagonal and Gram routes used by decompose.
Eigen::VectorXd oracle_sigma(const Eigen::MatrixXd& x) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(x).singularValues();
}

double orthonormality_defect(const Eigen::MatrixXd& u) {
    return (u.transpose() * u - Eigen::MatrixXd::Identity(u.cols(), u.cols())).norm();
}

}  // namespace

TEST(PodSpectrum, Validation) {
    EXPECT_THROW(PodSpectrum({}), DataError);
    EXPECT_THROW(PodSpectrum({1.0, 2.0}), DataError);
    EXPECT_THROW(PodSpectrum({1.0, -0.5}), DataError);
    EXPECT_THROW(PodSpectrum({NAN}), DataError);
    const PodSpectrum s({3.0, 2.0, 1.0});
    EXPECT_DOUBLE_EQ(s.total_energy(), 14.0);
    EXPECT_DOUBLE_EQ(s.tail_energy(1), 5.0);
    EXPECT_DOUBLE_EQ(s.tail_energy(3), 0.0);
}

TEST(Decompose, DiagonalIsSorted) {
    Eigen::MatrixXd x(2, 2);
    x << 3, 0, 0, 4;
    for (auto method : {SvdMethod::direct, SvdMethod::method_of_snapshots}) {
        const auto b = decompose(x, method);
        EXPECT_NEAR(b.spectrum[0], 4.0, 1e-14);
        EXPECT_NEAR(b.spectrum[1], 3.0, 1e-14);
    }
}

TEST(Decompose, RankOne) {
    std::mt19937_64 rng(1);
    Eigen::VectorXd a = random_dense(rng, 30, 1);
    Eigen::VectorXd b = random_dense(rng, 12, 1);
    a.normalize();
    b.normalize();
    const Eigen::MatrixXd x = -2.5 * a * b.transpose();
    for (auto method : {SvdMethod::direct, SvdMethod::method_of_snapshots}) {
        const auto basis = decompose(x, method);
        EXPECT_NEAR(basis.spectrum[0], 2.5, 1e-13);
        for (std::size_t i = 1; i < basis.spectrum.size(); ++i) EXPECT_LT(basis.spectrum[i], 1e-12);
    }
}

TEST(Decompose, RejectsNonFinite) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 3);
    x(1, 1) = INFINITY;
    EXPECT_THROW(decompose(x, SvdMethod::direct), DataError);
}

TEST(Decompose, AutomaticChoice) {
    std::mt19937_64 rng(5);
    // Tall enough for the Gram route; both must give the oracle values anyway.
    const Eigen::MatrixXd tall = random_dense(rng, 90, 10);
    const Eigen::VectorXd expected = oracle_sigma(tall);
    const auto b = decompose(tall, SvdMethod::automatic);
    for (Eigen::Index i = 0; i < expected.size(); ++i) EXPECT_NEAR(b.spectrum[i], expected(i), 1e-12 * expected(0));
}

TEST(Decompose, MatchesOracleAndReconstructs) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const Eigen::Index rows = 5 + static_cast<Eigen::Index>(rng() % 60);
        const Eigen::Index cols = 2 + static_cast<Eigen::Index>(rng() % 40);
        const Eigen::MatrixXd x = random_dense(rng, rows, cols);
        const Eigen::VectorXd expected = oracle_sigma(x);
        for (auto method : {SvdMethod::direct, SvdMethod::method_of_snapshots}) {
            const auto b = decompose(x, method);
            ASSERT_EQ(b.spectrum.size(), static_cast<std::size_t>(expected.size()));
            for (Eigen::Index i = 0; i < expected.size(); ++i) {
                EXPECT_NEAR(b.spectrum[i], expected(i), 1e-10 * expected(0));
            }
            EXPECT_LE(orthonormality_defect(b.modes), 1e-10);
            EXPECT_LE((reconstruct(b) - x).norm(), 1e-10 * x.norm());
        }
    }
}

TEST(Decompose, SnapshotsAgreeWithDirectOnLargeRandom) {
    std::mt19937_64 rng(99);
    for (auto [rows, cols] : {std::pair{200, 100}, std::pair{150, 60}, std::pair{120, 100}}) {
        const Eigen::MatrixXd x = random_dense(rng, rows, cols);
        const auto direct = decompose(x, SvdMethod::direct).spectrum;
        const auto gram = decompose(x, SvdMethod::method_of_snapshots).spectrum;
        for (std::size_t i = 0; i < direct.size(); ++i) {
            EXPECT_LE(std::abs(gram[i] - direct[i]), 1e-8 * direct[i]) << rows << "x" << cols << " index " << i;
        }
    }
}

TEST(Decompose, SnapshotsAgreeWithDirectOnJump) {
    const auto m = gen_advected_jump(Grid1D(256), 128);
    const auto direct = decompose(m.data(), SvdMethod::direct).spectrum;
    const auto gram = decompose(m.data(), SvdMethod::method_of_snapshots).spectrum;
    for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_LE(std::abs(gram[i] - direct[i]), 1e-8 * direct[i]);
}

TEST(Decompose, SignConvention) {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXd x = random_dense(rng, 20, 8);
    const auto a = decompose(x, SvdMethod::direct);
    const auto b = decompose(x, SvdMethod::method_of_snapshots);
    for (Eigen::Index k = 0; k < a.modes.cols(); ++k) {
        Eigen::Index at = 0;
        a.modes.col(k).cwiseAbs().maxCoeff(&at);
        EXPECT_GT(a.modes(at, k), 0.0);
        EXPECT_LE((a.modes.col(k) - b.modes.col(k)).norm(), 1e-8);
    }
    // Same input, same output bits.
    const auto again = decompose(x, SvdMethod::direct);
    EXPECT_EQ(again.modes, a.modes);
}

TEST(Decompose, ScalingInvariance) {
    std::mt19937_64 rng(8);
    const Eigen::MatrixXd x = random_dense(rng, 25, 10);
    const auto s1 = decompose(x, SvdMethod::direct).spectrum;
    const auto s2 = decompose(7.5 * x, SvdMethod::direct).spectrum;
    const auto n1 = normalized_spectrum(s1);
    const auto n2 = normalized_spectrum(s2);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        EXPECT_NEAR(s2[i], 7.5 * s1[i], 1e-12 * s2[0]);
        EXPECT_NEAR(n1[i], n2[i], 1e-12);
    }
    for (double t : {0.5, 0.9, 0.99, 0.9999}) {
        EXPECT_EQ(modes_for_energy(s1, t).modes_needed, modes_for_energy(s2, t).modes_needed);
    }
}

TEST(NormalizedSpectrum, Examples) {
    EXPECT_EQ(normalized_spectrum(PodSpectrum({4.0, 3.0})), (std::vector<double>{1.0, 0.75}));
    EXPECT_EQ(normalized_spectrum(PodSpectrum({5.0})), (std::vector<double>{1.0}));
    EXPECT_THROW(normalized_spectrum(PodSpectrum({0.0, 0.0})), DegenerateSpectrumError);
}

TEST(ModesForEnergy, HandCases) {
    EXPECT_EQ(modes_for_energy(PodSpectrum({1.0, 0.0, 0.0}), 0.9999).modes_needed, 1u);
    EXPECT_EQ(modes_for_energy(PodSpectrum({1.0, 1.0, 1.0, 1.0}), 0.5).modes_needed, 2u);
    const auto r = modes_for_energy(PodSpectrum({3.0, 2.0, 1.0}), 0.9);
    EXPECT_EQ(r.modes_needed, 2u);
    EXPECT_NEAR(r.cumulative[0], 9.0 / 14.0, 1e-15);
    EXPECT_NEAR(r.cumulative[1], 13.0 / 14.0, 1e-15);
    EXPECT_EQ(r.cumulative[2], 1.0);
    EXPECT_EQ(modes_for_energy(PodSpectrum({3.0, 2.0, 1.0}), 1.0).modes_needed, 3u);
}

TEST(ModesForEnergy, Errors) {
    const PodSpectrum s({1.0, 0.5});
    EXPECT_THROW(modes_for_energy(s, 0.0), ArgumentError);
    EXPECT_THROW(modes_for_energy(s, 1.5), ArgumentError);
    EXPECT_THROW(modes_for_energy(s, NAN), ArgumentError);
    EXPECT_THROW(modes_for_energy(PodSpectrum({0.0}), 0.5), DegenerateSpectrumError);
}

TEST(ModesForEnergy, MonotoneInThreshold) {
    std::mt19937_64 rng(17);
    const auto s = decompose(random_dense(rng, 40, 30), SvdMethod::direct).spectrum;
    std::size_t previous = 0;
    for (double t = 0.05; t <= 1.0; t += 0.05) {
        const std::size_t n = modes_for_energy(s, t).modes_needed;
        EXPECT_GE(n, previous);
        previous = n;
    }
}

TEST(Truncate, FullRankIsLossless) {
    std::mt19937_64 rng(4);
    const Eigen::MatrixXd x = random_dense(rng, 15, 9);
    const auto b = decompose(x, SvdMethod::direct);
    EXPECT_LE((reconstruct(truncate(b, b.rank())) - x).norm(), 1e-10 * x.norm());
    EXPECT_THROW(truncate(b, 0), ArgumentError);
    EXPECT_THROW(truncate(b, b.rank() + 1), ArgumentError);
    EXPECT_EQ(truncate(b, 3).spectrum.size(), b.spectrum.size());
}

TEST(Truncate, RankTwoToOne) {
    Eigen::MatrixXd x(3, 2);
    x << 2, 0, 0, 1, 0, 0;
    const auto b = decompose(x, SvdMethod::direct);
    const double err2 = (reconstruct(truncate(b, 1)) - x).squaredNorm();
    EXPECT_NEAR(err2, 1.0, 1e-8);
}

TEST(Truncate, EckartYoungAgainstOracle) {
    std::mt19937_64 rng(12);
    for (auto [rows, cols] : {std::pair{64, 64}, std::pair{50, 20}, std::pair{10, 40}}) {
        const Eigen::MatrixXd x = random_dense(rng, rows, cols);
        const Eigen::VectorXd sigma = oracle_sigma(x);
        for (auto method : {SvdMethod::direct, SvdMethod::method_of_snapshots}) {
            const auto b = decompose(x, method);
            for (std::size_t r = 1; r < b.rank(); ++r) {
                const double err2 = (reconstruct(truncate(b, r)) - x).squaredNorm();
                const double tail = sigma.tail(sigma.size() - static_cast<Eigen::Index>(r)).squaredNorm();
                EXPECT_LE(std::abs(err2 - tail), 1e-8 * tail) << rows << "x" << cols << " r=" << r;
                EXPECT_LE(std::abs(b.spectrum.tail_energy(r) - tail), 1e-8 * tail);
            }
        }
    }
}

TEST(Truncate, HeatAtTenModes) {
    const auto m = solve_heat1d(Heat1DConfig{});
    const auto b = decompose(m);
    const double err = (reconstruct(truncate(b, 10)) - m.data()).norm() / m.data().norm();
    EXPECT_LT(err, 1e-4);
}

TEST(ComponentSplit, SingleSegmentIsIdentity) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 3);
    const SnapshotMatrix m(x, FieldLayout::single("u", 4), {0.0, 1.0, 2.0});
    const auto parts = component_split(m);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts.at("u"), m);
}

TEST(ComponentSplit, ZeroBlockAndRestacking) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(8, 5);
    x.bottomRows(4).setZero();
    const SnapshotMatrix m(x, FieldLayout::from_counts({{"u", 4}, {"p", 4}}), {0, 1, 2, 3, 4});
    const auto parts = component_split(m);
    const auto p = decompose(parts.at("p")).spectrum;
    for (double s : p.sigma()) EXPECT_EQ(s, 0.0);
    Eigen::MatrixXd stacked(8, 5);
    stacked << parts.at("u").data(), parts.at("p").data();
    EXPECT_EQ(stacked, x);
    EXPECT_EQ(parts.at("u").labels(), m.labels());
}

TEST(ComponentSplit, BlockSpectraBoundedByFull) {
    std::mt19937_64 rng(21);
    const Eigen::MatrixXd x = random_dense(rng, 30, 12);
    const SnapshotMatrix m(x, FieldLayout::from_counts({{"u", 12}, {"v", 12}, {"p", 6}}),
                           {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    const double full = oracle_sigma(x)(0);
    for (const auto& [name, part] : component_split(m)) {
        EXPECT_LE(decompose(part).spectrum[0], full * (1.0 + 1e-12)) << name;
    }
}

TEST(SelectFields, StacksInRequestedOrder) {
    Eigen::MatrixXd x(5, 2);
    x << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10;
    const SnapshotMatrix m(x, FieldLayout::from_counts({{"u", 2}, {"v", 1}, {"p", 2}}), {0.0, 1.0});
    const auto s = select_fields(m, {"p", "u"});
    Eigen::MatrixXd expected(4, 2);
    expected << 7, 8, 9, 10, 1, 2, 3, 4;
    EXPECT_EQ(s.data(), expected);
    EXPECT_EQ(s.layout().find("u").row_offset, 2u);
    EXPECT_THROW(select_fields(m, {"w"}), ArgumentError);
}

TEST(SpectrumCsv, RoundTripAndFormat) {
    const PodSpectrum s({3.0, 2.0, 1.0 / 3.0});
    std::ostringstream out;
    write_spectrum_csv(s, out);
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "index,sigma,sigma_norm,cumulative_energy");
    EXPECT_NE(text.find("\n1,3,1,"), std::string::npos);
    EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
    std::istringstream in(text);
    EXPECT_EQ(read_spectrum_csv(in).sigma(), s.sigma());
}

TEST(SpectrumCsv, RejectsBadInput) {
    std::istringstream wrong_header("idx,sigma\n1,2\n");
    EXPECT_THROW(read_spectrum_csv(wrong_header), FormatError);
    std::istringstream bad_row("index,sigma,sigma_norm,cumulative_energy\n1,abc,1,1\n");
    EXPECT_THROW(read_spectrum_csv(bad_row), FormatError);
    std::istringstream increasing("index,sigma,sigma_norm,cumulative_energy\n1,1,1,0.2\n2,2,2,1\n");
    EXPECT_THROW(read_spectrum_csv(increasing), FormatError);
}
