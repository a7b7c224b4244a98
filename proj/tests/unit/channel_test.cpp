// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "plcgrid/channel_io.hpp"
#include "plcgrid/errors.hpp"
#include "plcgrid/multipath.hpp"
#include "plcgrid/path_loss.hpp"
#include "plcgrid/two_port.hpp"

namespace plcgrid {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVp = 2e8;

MultipathChannel random_channel(std::mt19937_64& rng, std::size_t paths) {
  std::uniform_real_distribution<double> g(-1.0, 1.0), d(0.0, 4e-6);
  std::vector<Path> p;
  for (std::size_t k = 0; k < paths; ++k) p.push_back(Path::constant({g(rng), g(rng)}, d(rng)));
  return MultipathChannel(std::move(p), Attenuation{0.0, 1e-9, 1.0}, kVp);
}

double max_abs_diff(const Abcd& a, const Abcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(Multipath, RejectsBadInput) {
  EXPECT_THROW(MultipathChannel({}, {}, kVp), ModelError);
  EXPECT_THROW(MultipathChannel({Path::constant(1.0, -1e-6)}, {}, kVp), ModelError);
  EXPECT_THROW(MultipathChannel({Path::constant(1.0, 0.0)}, {}, 0.0), ModelError);
  EXPECT_THROW(MultipathChannel({Path::constant(1.0, 0.0)}, Attenuation{-1.0, 0.0, 1.0}, kVp),
               ModelError);
}

TEST(Multipath, TwoPathNullAtHalfInverseDelaySpread) {
  const double dtheta = 1e-6;
  const MultipathChannel ch({Path::constant(1.0, 0.0), Path::constant(1.0, dtheta)}, {}, kVp);
  const std::vector<double> f{1.0 / (2.0 * dtheta), 1.0 / dtheta};
  const auto h = transfer_function(ch, f);
  EXPECT_LT(std::abs(h(0)), 1e-12);
  EXPECT_NEAR(std::abs(h(1)), 2.0, 1e-12);
}

TEST(Multipath, SinglePathIsPureDelay) {
  const MultipathChannel ch({Path::constant(0.5, 2e-6)}, {}, kVp);
  const std::vector<double> f{0.0, 1e5, 3.3e5};
  const auto h = transfer_function(ch, f);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Complex expected = 0.5 * std::polar(1.0, -2.0 * kPi * f[k] * 2e-6);
    EXPECT_LT(std::abs(h(static_cast<Eigen::Index>(k)) - expected), 1e-14);
  }
}

TEST(Multipath, AttenuationScalesByPathLength) {
  const Attenuation a{1e-3, 0.0, 1.0};
  const MultipathChannel ch({Path::constant(1.0, 1e-6)}, a, kVp);
  const std::vector<double> f{2e5};
  EXPECT_NEAR(std::abs(transfer_function(ch, f)(0)), std::exp(-1e-3 * kVp * 1e-6), 1e-14);
}

TEST(Multipath, LinearInPathGains) {
  std::mt19937_64 rng(3);
  const auto ch = random_channel(rng, 5);
  std::vector<Path> doubled;
  for (const auto& p : ch.paths()) doubled.push_back(Path::constant(2.0 * p.gain(0.0), p.delay_s));
  const MultipathChannel ch2(doubled, ch.attenuation(), kVp);
  const auto f = linear_grid(0.0, 5e6, 101);
  EXPECT_LT((transfer_function(ch2, f) - 2.0 * transfer_function(ch, f)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Impulse, SinglePathAtThreeSamples) {
  const double fs = 1e6;
  const MultipathChannel ch({Path::constant(1.0, 3.0 / fs)}, {}, kVp);
  const auto h = impulse_response(ch, fs, 64.0 / fs, ImpulseOptions{0.0});
  ASSERT_EQ(h.samples.size(), 64u);
  for (std::size_t k = 0; k < h.samples.size(); ++k) {
    EXPECT_NEAR(h.samples[k], k == 3 ? 1.0 : 0.0, 1e-12) << k;
  }
}

TEST(Impulse, ParsevalOnRandomChannels) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ch = random_channel(rng, 1 + trial % 6);
    const double fs = 20e6 + 1e5 * trial;
    const double duration = 10e-6 + 1e-7 * trial;
    for (const double rolloff : {0.0, 0.1, 0.5}) {
      const auto h = impulse_response(ch, fs, duration, ImpulseOptions{rolloff});
      double energy = 0.0;
      for (double s : h.samples) energy += s * s;
      EXPECT_NEAR(energy, spectrum_energy(h), 1e-9 * energy);
    }
  }
}

TEST(Impulse, TwoPathPeaksAtRoundedDelays) {
  const double fs = 50e6;
  const MultipathChannel ch({Path::constant(1.0, 0.4e-6), Path::constant(-0.6, 1.3e-6)}, {}, kVp);
  const auto h = impulse_response(ch, fs, 4e-6, ImpulseOptions{0.0});
  std::size_t first = 0;
  for (std::size_t k = 0; k < h.samples.size(); ++k) {
    if (std::abs(h.samples[k]) > std::abs(h.samples[first])) first = k;
  }
  EXPECT_EQ(first, static_cast<std::size_t>(std::lround(0.4e-6 * fs)));
  std::size_t second = 0;
  for (std::size_t k = 0; k < h.samples.size(); ++k) {
    if (h.samples[k] < h.samples[second]) second = k;
  }
  EXPECT_EQ(second, static_cast<std::size_t>(std::lround(1.3e-6 * fs)));
}

TEST(Impulse, Errors) {
  const MultipathChannel ch({Path::constant(1.0, 5e-6)}, {}, kVp);
  EXPECT_THROW(impulse_response(ch, 1e6, 4e-6), ModelError);
  EXPECT_THROW(impulse_response(ch, 0.0, 10e-6), ModelError);
  EXPECT_THROW(impulse_response(ch, 1e6, 10e-6, ImpulseOptions{1.5}), ModelError);
}

TEST(LineSection, ZeroLengthIsIdentityAndReciprocal) {
  const auto f = linear_grid(1e3, 30e6, 64);
  const auto gamma = lossy_line(kVp, Attenuation{1e-4, 1e-10, 1.0});
  const auto zero = line_section(0.0, {50.0, -3.0}, gamma, f);
  for (const auto& m : zero.matrices()) EXPECT_LT(max_abs_diff(m, Abcd::Identity()), 1e-15);
  EXPECT_LT(line_section(120.0, {50.0, -3.0}, gamma, f).reciprocity_error(), 1e-9);
  EXPECT_THROW(line_section(1.0, 0.0, gamma, f), ModelError);
  EXPECT_THROW(line_section(-1.0, 50.0, gamma, f), ModelError);
}

TEST(LineSection, SplitSectionsMatchWhole) {
  const auto f = linear_grid(1e3, 30e6, 64);
  const auto gamma = lossy_line(1.5e8, Attenuation{2e-4, 3e-11, 1.0});
  const Complex z0(75.0, -2.0);
  const auto half = line_section(40.0, z0, gamma, f);
  const std::vector<TwoPortNetwork> halves{half, half};
  const auto joined = cascade(halves);
  for (std::size_t k = 0; k < f.size(); ++k) {
    // Closed form of the full 80 m section.
    const Complex gl = gamma(f[k]) * 80.0;
    Abcd expected;
    expected << std::cosh(gl), z0 * std::sinh(gl), std::sinh(gl) / z0, std::cosh(gl);
    EXPECT_LT(max_abs_diff(joined.at(k), expected), 1e-10 * expected.cwiseAbs().maxCoeff());
  }
}

TEST(Cascade, IdentityAssociativityAndErrors) {
  const auto f = linear_grid(1e4, 1e7, 16);
  const auto gamma = lossless_line(kVp);
  const TwoPortNetwork a = line_section(10.0, 50.0, gamma, f);
  const TwoPortNetwork b = line_section(25.0, 100.0, gamma, f);
  const TwoPortNetwork c = TwoPortNetwork::shunt(f, Eigen::VectorXcd::Constant(16, Complex(0.0, 0.01)));
  const std::vector<TwoPortNetwork> ids{TwoPortNetwork::identity(f), TwoPortNetwork::identity(f)};
  const std::vector<TwoPortNetwork> single{a};
  const std::vector<TwoPortNetwork> ab{a, b};
  const std::vector<TwoPortNetwork> bc{b, c};
  const std::vector<TwoPortNetwork> ab_c{cascade(ab), c};
  const std::vector<TwoPortNetwork> a_bc{a, cascade(bc)};
  const auto left = cascade(ab_c);
  const auto right = cascade(a_bc);
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_LT(max_abs_diff(cascade(ids).at(k), Abcd::Identity()), 1e-15);
    EXPECT_EQ(cascade(single).at(k), a.at(k));
    EXPECT_LT(max_abs_diff(left.at(k), right.at(k)), 1e-12);
  }
  EXPECT_THROW(cascade(std::span<const TwoPortNetwork>{}), ModelError);
  const std::vector<TwoPortNetwork> mixed{a, line_section(1.0, 50.0, gamma, linear_grid(1e4, 2e7, 16))};
  EXPECT_THROW(cascade(mixed), ModelError);
}

TEST(Companion, OpenZeroLengthTapLeavesLinkUnchanged) {
  const auto f = linear_grid(1e4, 1e7, 32);
  const auto gamma = lossless_line(kVp);
  const std::vector<TwoPortNetwork> link{line_section(50.0, 50.0, gamma, f)};
  const Companion open{{line_section(0.0, 50.0, gamma, f)}, std::nullopt};
  const auto attached = attach_companion(link, 1, open);
  ASSERT_EQ(attached.size(), 2u);
  const auto before = endtoend_gain(link, 50.0, 50.0);
  const auto after = endtoend_gain(attached, 50.0, 50.0);
  EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Companion, InsertRemoveRoundTrip) {
  const auto f = linear_grid(1e4, 1e7, 32);
  const auto gamma = lossy_line(kVp, Attenuation{1e-4, 0.0, 1.0});
  const std::vector<TwoPortNetwork> link{line_section(30.0, 50.0, gamma, f),
                                         line_section(70.0, 60.0, gamma, f)};
  const Companion tap{{line_section(12.0, 50.0, gamma, f)}, Complex(100.0, 20.0)};
  auto attached = attach_companion(link, 1, tap);
  attached.erase(attached.begin() + 1);
  const auto a = cascade(link);
  const auto b = cascade(attached);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LT(max_abs_diff(a.at(k), b.at(k)), 1e-12);
}

TEST(Companion, OpenTapAdmittanceAndNotches) {
  const double length = 30.0;
  const Complex z0 = 50.0;
  const auto f = linear_grid(1e5, 10e6, 397);
  const auto gamma = lossless_line(kVp);
  const Companion tap{{line_section(length, z0, gamma, f)}, std::nullopt};
  const auto y = input_admittance(tap);
  for (std::size_t k = 0; k < f.size(); ++k) {
    // Open stub: Z_in = -j Z0 cot(beta L), so Y_in = j tan(beta L) / Z0.
    const double beta = 2.0 * kPi * f[k] / kVp;
    const Complex expected = Complex(0.0, std::tan(beta * length)) / z0;
    EXPECT_LT(std::abs(y(static_cast<Eigen::Index>(k)) - expected),
              1e-9 * std::max(1.0, std::abs(expected)));
  }
  // Notch where the stub is a quarter wavelength: f = v_p / (4 L).
  const std::vector<double> notch{kVp / (4.0 * length)};
  const std::vector<TwoPortNetwork> link{line_section(0.0, z0, gamma, notch)};
  const Companion notch_tap{{line_section(length, z0, gamma, notch)}, std::nullopt};
  const auto h = endtoend_gain(attach_companion(link, 1, notch_tap), 50.0, 50.0);
  EXPECT_LT(std::abs(h(0)), 1e-9);
}

TEST(Companion, ShortAtPanelIsAnError) {
  const auto f = linear_grid(1e5, 1e6, 4);
  const Companion shorted{{line_section(0.0, 50.0, lossless_line(kVp), f)}, Complex(0.0, 0.0)};
  EXPECT_THROW(input_admittance(shorted), ModelError);
  EXPECT_THROW(attach_companion({}, 1, shorted), ModelError);
}

TEST(EndToEnd, DividerCases) {
  const auto f = linear_grid(1e5, 1e6, 4);
  const std::vector<TwoPortNetwork> id{TwoPortNetwork::identity(f)};
  for (const auto& h : endtoend_gain(id, 0.0, 50.0)) EXPECT_LT(std::abs(h - 1.0), 1e-15);
  for (const auto& h : endtoend_gain(id, 50.0, 50.0)) EXPECT_LT(std::abs(h - 0.5), 1e-15);
  EXPECT_THROW(endtoend_gain(id, 0.0, 0.0), ModelError);
}

TEST(EndToEnd, MatchedLosslessLineIsFlatAndPassive) {
  const auto f = linear_grid(1e4, 30e6, 301);
  const std::vector<TwoPortNetwork> link{line_section(500.0, 50.0, lossless_line(kVp), f),
                                         line_section(120.0, 50.0, lossless_line(kVp), f)};
  const auto matched = endtoend_gain(link, 50.0, 50.0);
  for (const auto& h : matched) EXPECT_NEAR(std::abs(h), 0.5, 1e-12);
  const auto driven = endtoend_gain(link, 0.0, 50.0);
  for (const auto& h : driven) EXPECT_LE(std::abs(h), 1.0 + 1e-9);
}

TEST(PathLoss, TableAnchors) {
  const auto t = PathLossTable::typical();
  EXPECT_NEAR(pathloss_db(t, SegmentClass::lv, 100e3, 1.0), 2.25, 1e-12);
  EXPECT_NEAR(pathloss_db(t, SegmentClass::hv_overhead, 10e6, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(pathloss_db(t, SegmentClass::mv_underground, 10e6, 2.0), 130.0, 1e-12);
  EXPECT_NEAR(pathloss_db(t, SegmentClass::lv, 100e3, 1.0, LossSelector::pessimistic), 3.0, 0.0);
  EXPECT_NEAR(pathloss_db(t, SegmentClass::lv, 100e3, 1.0, LossSelector::optimistic), 1.5, 0.0);
  // Geometric midpoint of the band sits halfway in log frequency.
  EXPECT_NEAR(pathloss_db(t, SegmentClass::mv_overhead, 1e6, 1.0), 0.5 * (0.75 + 40.0), 1e-12);
  // Clamped outside the anchors.
  EXPECT_EQ(pathloss_db(t, SegmentClass::lv, 10e3, 1.0), pathloss_db(t, SegmentClass::lv, 100e3, 1.0));
  EXPECT_EQ(pathloss_db(t, SegmentClass::lv, 30e6, 1.0), pathloss_db(t, SegmentClass::lv, 10e6, 1.0));
  for (auto c : {SegmentClass::lv, SegmentClass::mv_overhead, SegmentClass::mv_underground,
                 SegmentClass::hv_overhead}) {
    EXPECT_EQ(pathloss_db(t, c, 1e6, 0.0), 0.0);
  }
}

TEST(PathLoss, MonotoneInFrequencyAndDistance) {
  const auto t = PathLossTable::typical();
  for (auto c : {SegmentClass::lv, SegmentClass::mv_overhead, SegmentClass::mv_underground,
                 SegmentClass::hv_overhead}) {
    double prev = 0.0;
    for (double f = 1e5; f <= 1e7; f *= 1.2) {
      const double now = pathloss_db(t, c, f, 1.0);
      EXPECT_GT(now, prev);
      prev = now;
    }
    EXPECT_LT(pathloss_db(t, c, 1e6, 1.0), pathloss_db(t, c, 1e6, 1.5));
  }
}

TEST(PathLoss, Errors) {
  PathLossTable empty;
  EXPECT_THROW(pathloss_db(empty, SegmentClass::lv, 1e6, 1.0), ModelError);
  const auto t = PathLossTable::typical();
  EXPECT_THROW(pathloss_db(t, SegmentClass::lv, 0.0, 1.0), ModelError);
  EXPECT_THROW(pathloss_db(t, SegmentClass::lv, 1e6, -1.0), ModelError);
  EXPECT_THROW(empty.set(SegmentClass::lv, {{2.0, 1.0}, {3.0, 4.0}}), ModelError);
  EXPECT_EQ(parse_segment_class("MV_underground"), SegmentClass::mv_underground);
  EXPECT_FALSE(parse_segment_class("mv").has_value());
}

TEST(ChannelIo, ReadsSampleChannel) {
  std::ifstream in(testing::data_dir() / "samples" / "two_path.channel");
  ASSERT_TRUE(in);
  const auto ch = read_channel(in);
  EXPECT_EQ(ch.n_paths(), 2u);
  const std::vector<double> f{5e5};
  EXPECT_LT(std::abs(transfer_function(ch, f)(0)), 1e-12);
}

TEST(ChannelIo, ComplexGainsAndErrors) {
  std::istringstream good("v_p=2e8\na1=1e-10\ngain,delay_us,gain_imag\n0.5,1.0,0.25\n");
  const auto ch = read_channel(good);
  EXPECT_EQ(ch.paths()[0].gain(0.0), Complex(0.5, 0.25));
  EXPECT_DOUBLE_EQ(ch.paths()[0].delay_s, 1e-6);
  std::istringstream no_vp("gain,delay_us\n1,0\n");
  EXPECT_THROW(read_channel(no_vp), ParseError);
  std::istringstream bad_row("v_p=2e8\ngain,delay_us\n1,abc\n");
  EXPECT_THROW(read_channel(bad_row), ParseError);
}

TEST(ChannelIo, ChainAndGammaModels) {
  EXPECT_THROW(parse_gamma_model("lossless()"), ParseError);
  EXPECT_THROW(parse_gamma_model("cubic(vp=1)"), ParseError);
  const auto g = parse_gamma_model("lossy(vp=2e8;a0=1e-3;a1=0;k=1)");
  EXPECT_NEAR(g(1e6).real(), 1e-3, 1e-15);
  EXPECT_NEAR(g(1e6).imag(), 2.0 * kPi * 1e6 / 2e8, 1e-15);

  std::ifstream in(testing::data_dir() / "samples" / "bridged_tap.chain");
  ASSERT_TRUE(in);
  const auto chain = read_chain(in);
  ASSERT_EQ(chain.sections.size(), 3u);
  EXPECT_EQ(chain.sections[1].role, SectionRole::tap_open);
  const auto f = linear_grid(1e5, 3e6, 30);
  EXPECT_EQ(build_link(chain, f).size(), 3u);
  // The 30 m open tap on a 1.5e8 m/s line notches at 1.5e8 / 120 Hz.
  const std::vector<double> notch{1.5e8 / 120.0};
  EXPECT_LT(std::abs(chain_response(chain, notch)(0)), 1e-9);
}

TEST(ChannelIo, EmptyChainIsDirectConnection) {
  std::istringstream in("zs_real=50\nlength_m,z0_real,z0_imag,gamma_model\n");
  EXPECT_THROW(read_chain(in), ParseError);
  ChainSpec chain;
  chain.source_impedance = 50.0;
  const auto f = linear_grid(1e5, 1e6, 3);
  for (const auto& h : chain_response(chain, f)) EXPECT_LT(std::abs(h - 0.5), 1e-15);
}

TEST(ChannelIo, GridAndWriters) {
  const auto f = linear_grid(0.0, 1.0, 5);
  EXPECT_EQ(f, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(linear_grid(3.0, 9.0, 1), std::vector<double>{3.0});
  std::ostringstream os;
  Eigen::VectorXcd h(2);
  h << Complex(0.0, 1.0), 2.0;
  write_transfer_function(os, std::vector<double>{1.0, 2.0}, h);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "frequency_hz,magnitude,phase_rad");
}

}  // namespace
}  // namespace plcgrid
