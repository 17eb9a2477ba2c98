#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <set>

#include "heightcensus/census.hpp"
#include "heightcensus/factor.hpp"

using namespace hc;

namespace {

// ---- independent oracle: double-precision companion eigenvalues and naive factor search

double oracle_measure(const std::vector<long>& a) {
    const int d = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -static_cast<double>(a[static_cast<std::size_t>(i)]) / static_cast<double>(a.back());
    Eigen::EigenSolver<Eigen::MatrixXd> es(c);
    double m = std::abs(static_cast<double>(a.back()));
    for (int i = 0; i < d; ++i) m *= std::max(1.0, std::abs(es.eigenvalues()[i]));
    return m;
}

// Degree <= 3: reducible iff a rational root exists.
bool oracle_irreducible(const std::vector<long>& a) {
    const int d = static_cast<int>(a.size()) - 1;
    if (d == 1) return true;
    if (a[0] == 0) return false;
    for (long q = 1; q <= std::labs(a.back()); ++q) {
        if (a.back() % q) continue;
        for (long p = -std::labs(a[0]); p <= std::labs(a[0]); ++p) {
            if (p == 0 || a[0] % p) continue;
            // a(p/q) * q^d == 0
            long double s = 0, pw = 1;
            for (int i = 0; i <= d; ++i) {
                long double term = static_cast<long double>(a[static_cast<std::size_t>(i)]) * pw;
                for (int j = i; j < d; ++j) term *= q;
                s += term;
                pw *= p;
            }
            if (s == 0) return false;
        }
    }
    return true;
}

// Brute-force count of E_{D,N} with threshold value e^{dN} given as a double.
long oracle_epsilon(int D, double n_value) {
    long total = 0;
    for (int d = 1; d <= D; ++d) {
        const double bound = std::exp(d * n_value);
        std::vector<long> lim(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) {
            double binom = std::tgamma(d + 1) / (std::tgamma(i + 1) * std::tgamma(d - i + 1));
            lim[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(binom * bound + 1e-9));
        }
        std::vector<long> a(static_cast<std::size_t>(d) + 1);
        for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) a[i] = -lim[i];
        a.back() = 1;
        while (true) {
            long g = 0;
            for (auto c : a) g = std::gcd(g, c);
            if (g == 1 && oracle_irreducible(a) && oracle_measure(a) <= bound * (1 + 1e-12)) total += d;
            std::size_t i = 0;
            for (; i <= static_cast<std::size_t>(d); ++i) {
                if (++a[i] <= lim[i]) break;
                a[i] = (i == static_cast<std::size_t>(d)) ? 1 : -lim[i];
            }
            if (i > static_cast<std::size_t>(d)) break;
        }
    }
    return total;
}

std::set<std::string> keys(const std::vector<AlgebraicNumber>& v) {
    std::set<std::string> s;
    for (const auto& a : v) s.insert(a.str());
    return s;
}

}  // namespace

TEST(Census, CandidateBox) {
    EXPECT_EQ(candidate_box(1, ThresholdSpec::rational(0)), (std::vector<Integer>{1, 1}));
    EXPECT_EQ(candidate_box(2, ThresholdSpec::rational(0)), (std::vector<Integer>{1, 2, 1}));
    EXPECT_EQ(candidate_box(1, ThresholdSpec::log_rational(2)), (std::vector<Integer>{2, 2}));
    EXPECT_EQ(candidate_box(2, ThresholdSpec::rational(1)), (std::vector<Integer>{8, 15, 8}));
}

TEST(Census, SmallEpsilonsAgainstOracle) {
    EXPECT_EQ(epsilon(1, ThresholdSpec::rational(0)), 3);
    EXPECT_EQ(epsilon(2, ThresholdSpec::rational(0)), 9);
    EXPECT_EQ(epsilon(3, ThresholdSpec::rational(0)), 9);
    EXPECT_EQ(epsilon(1, ThresholdSpec::log_rational(2)), 7);
    EXPECT_EQ(oracle_epsilon(1, 0.0), 3);
    EXPECT_EQ(oracle_epsilon(2, 0.0), 9);
    EXPECT_EQ(oracle_epsilon(3, 0.0), 9);
    EXPECT_EQ(oracle_epsilon(1, std::log(2.0)), 7);
    EXPECT_EQ(epsilon(2, ThresholdSpec::rational(1)), oracle_epsilon(2, 1.0));
    EXPECT_EQ(epsilon(2, ThresholdSpec::log_rational(2)), oracle_epsilon(2, std::log(2.0)));
}

TEST(Census, Listings) {
    CensusSpec s{1, ThresholdSpec::rational(0), default_budget(), 1, true};
    auto r = enumerate_E(s);
    ASSERT_EQ(r.listing.size(), 3u);
    std::vector<Rational> vals;
    for (const auto& a : r.listing) vals.push_back(a.to_rational());
    EXPECT_EQ(vals, (std::vector<Rational>{Rational(1), Rational(0), Rational(-1)}));  // X-1, X, X+1

    s.D = 2;
    r = enumerate_E(s);
    EXPECT_EQ(r.epsilon, 9);
    EXPECT_EQ(r.by_degree[1], 3);
    EXPECT_EQ(r.by_degree[2], 6);
    std::set<IntPoly> want = {IntPoly{0, 1}, IntPoly{1, 1}, IntPoly{-1, 1}, IntPoly{1, 0, 1}, IntPoly{1, 1, 1}, IntPoly{1, -1, 1}};
    EXPECT_EQ(std::set<IntPoly>(r.minpolys.begin(), r.minpolys.end()), want);
    EXPECT_TRUE(std::is_sorted(r.listing.begin(), r.listing.end()));

    s.D = 1;
    s.N = ThresholdSpec::log_rational(2);
    r = enumerate_E(s);
    std::set<Rational> got;
    for (const auto& a : r.listing) got.insert(a.to_rational());
    EXPECT_EQ(got, (std::set<Rational>{0, 1, -1, 2, -2, Rational(1, 2), Rational(-1, 2)}));
}

TEST(Census, DegreeOneFastPath) {
    for (long b = 1; b <= 50; ++b) {
        const auto n = ThresholdSpec::log_rational(b);
        CensusSpec s{1, n, default_budget(), 1, false};
        EXPECT_EQ(epsilon_degree_one(n), enumerate_E(s).epsilon) << b;
    }
    for (const char* q : {"1/2", "1", "3/2", "2"}) {
        const auto n = ThresholdSpec::parse(q);
        CensusSpec s{1, n, default_budget(), 1, false};
        EXPECT_EQ(epsilon_degree_one(n), enumerate_E(s).epsilon) << q;
    }
}

TEST(Census, Eisenstein) {
    EXPECT_EQ(count_eisenstein(1, 4), 8);
    EXPECT_EQ(count_eisenstein(2, 4), 40);
    EXPECT_EQ(count_eisenstein(1, 1), 0);
    for (int D = 1; D <= 4; ++D) {
        for (long H = 1; H <= 10; ++H) {
            long brute = 0;
            std::vector<long> a(static_cast<std::size_t>(D) + 1, -H);
            while (true) {
                bool ok = (a[static_cast<std::size_t>(D)] % 2 != 0);
                for (int i = 1; i < D && ok; ++i) ok = a[static_cast<std::size_t>(i)] % 2 == 0;
                ok = ok && ((a[0] % 4) + 4) % 4 == 2;
                if (ok) ++brute;
                std::size_t i = 0;
                for (; i < a.size(); ++i) {
                    if (++a[i] <= H) break;
                    a[i] = -H;
                }
                if (i == a.size()) break;
            }
            EXPECT_EQ(count_eisenstein(D, H), brute) << D << " " << H;
        }
    }
    // sampled counted polynomials are irreducible
    for (const IntPoly& p : {IntPoly{2, 0, 0, 1}, IntPoly{-6, 4, -2, 3}, IntPoly{10, 8, 0, -6, 9}, IntPoly{2, 2, 2, 2, 1}}) {
        EXPECT_TRUE(is_irreducible(canonical_form(p)).irreducible) << p.str();
    }
}

TEST(Census, Lemma1) {
    for (auto [D, n] : std::vector<std::pair<int, ThresholdSpec>>{{1, ThresholdSpec::rational(0)},
                                                                  {2, ThresholdSpec::rational(0)},
                                                                  {1, ThresholdSpec::log_rational(2)},
                                                                  {2, ThresholdSpec::rational(1)}}) {
        const auto rep = verify_lemma1(D, n);
        EXPECT_TRUE(rep.pass()) << D << " " << n.str();
    }
    const auto r = verify_lemma1(1, ThresholdSpec::rational(1));
    EXPECT_TRUE(r.lower_exact);
}

TEST(Census, PartitionMergeAndWorkers) {
    const auto n = ThresholdSpec::rational(1);
    const auto full = full_ranges(2, n);
    const auto whole = scan_box(2, n, full);
    // split a_1 and a_0 ranges into pieces
    std::vector<IntPoly> merged;
    const std::vector<std::pair<long, long>> a1_parts = {{full[1].first, -4}, {-3, 2}, {3, full[1].second}};
    const std::vector<std::pair<long, long>> a0_parts = {{full[0].first, 0}, {1, full[0].second}};
    for (const auto& p1 : a1_parts)
        for (const auto& p0 : a0_parts) {
            auto r = full;
            r[1] = p1;
            r[0] = p0;
            auto part = scan_box(2, n, r);
            merged.insert(merged.end(), part.begin(), part.end());
        }
    std::sort(merged.begin(), merged.end());
    EXPECT_EQ(merged, whole);
    std::vector<std::vector<AlgebraicNumber>> lists;
    for (unsigned w : {1u, 2u, 4u}) {
        CensusSpec s{2, n, default_budget(), w, true};
        lists.push_back(enumerate_E(s).listing);
    }
    EXPECT_EQ(lists[0], lists[1]);
    EXPECT_EQ(lists[0], lists[2]);
}

TEST(Census, ListingProperties) {
    const std::vector<ThresholdSpec> ns = {ThresholdSpec::rational(0), ThresholdSpec::log_rational(2), ThresholdSpec::rational(1)};
    std::vector<std::vector<std::set<std::string>>> grid;
    for (int D = 1; D <= 2; ++D) {
        grid.emplace_back();
        for (const auto& n : ns) {
            CensusSpec s{D, n, default_budget(), 2, true};
            const auto r = enumerate_E(s);
            const auto k = keys(r.listing);
            EXPECT_EQ(k.size(), r.listing.size());
            for (const auto& a : r.listing) {
                // Galois closure
                for (const auto& c : AlgebraicNumber::roots_of_irreducible(a.minpoly())) EXPECT_TRUE(k.count(c.str()));
                // inversion symmetry
                if (!a.is_zero()) EXPECT_TRUE(k.count(a.reciprocal().str())) << a.str();
            }
            grid.back().push_back(k);
        }
    }
    // monotone in D and N
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < ns.size(); ++j) {
            if (j + 1 < ns.size()) {
                EXPECT_TRUE(std::includes(grid[i][j + 1].begin(), grid[i][j + 1].end(), grid[i][j].begin(), grid[i][j].end()));
            }
            if (i == 0) EXPECT_TRUE(std::includes(grid[1][j].begin(), grid[1][j].end(), grid[0][j].begin(), grid[0][j].end()));
        }
}

TEST(Census, BudgetExceeded) {
    CensusSpec s{4, ThresholdSpec::rational(3), default_budget(), 1, false};
    EXPECT_THROW(enumerate_E(s), BudgetExceeded);
    try {
        enumerate_E(s);
    } catch (const BudgetExceeded& e) {
        EXPECT_EQ(e.budget(), "1000000000");
        EXPECT_GT(e.needed().size(), 10u);
    }
}
