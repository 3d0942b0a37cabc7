#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "esampling/psd.hpp"
#include "esampling/sampling.hpp"
#include "test_support.hpp"

using namespace esampling;

namespace {

constexpr double kSigmaX2 = 0.032;
constexpr double kFm = 19.8e6;

PsdModel flat() { return make_flat_psd(kSigmaX2, kFm); }
PsdModel unimodal() { return make_unimodal_psd(kSigmaX2, kFm, kFm / 3.0); }
PsdModel multimodal() { return make_multimodal_psd(kSigmaX2, kFm, kFm / 6.0); }

PsdModel tabulated_flat() {
  const double h = kSigmaX2 / (2.0 * kFm);
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i <= 32; ++i) rows.emplace_back(kFm * i / 32.0, h);
  rows.emplace_back(kFm * 1.001, 0.0);
  rows.emplace_back(kFm * 1.2, 0.0);
  return make_tabulated_psd(rows);
}

}  // namespace

TEST_CASE("flat closed form endpoints") {
  CHECK(nmse_flat_closed_form(kFm, 2.0 * kFm) == 0.0);
  CHECK(nmse_flat_closed_form(kFm, 0.6 * kFm) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(nmse_flat_closed_form(kFm, 4.0 * kFm) == 0.0);
}

TEST_CASE("nmse matches the flat closed form on a 50-point grid") {
  const auto m = flat();
  for (int i = 0; i < 50; ++i) {
    const double f_s = (0.3 + (2.5 - 0.3) * i / 49.0) * kFm;
    const double analytic = nmse(m, f_s);
    const double closed = nmse_flat_closed_form(kFm, f_s);
    CHECK(std::abs(analytic - closed) <= 1e-6);
  }
}

TEST_CASE("nmse anchors") {
  CHECK(nmse(flat(), 2.0 * kFm) <= 1e-9);
  CHECK(nmse(flat(), kFm) == doctest::Approx(0.5).epsilon(1e-6));
  // unimodal at the nominal Nyquist rate: small but not zero (3-sigma tails alias)
  CHECK(nmse(unimodal(), 2.0 * kFm) == doctest::Approx(4.151e-3).epsilon(2e-3));
  // the two multimodal modes fold onto each other exactly at f_s = 2 f_m
  CHECK(nmse(multimodal(), 2.0 * kFm) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("nmse rejects non-positive rates") {
  CHECK_THROWS_AS((void)nmse(flat(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)nmse(flat(), -1.0), std::invalid_argument);
}

TEST_CASE("nmse is non-increasing in f_s for monotone kinds") {
  for (const auto& m : {flat(), unimodal(), tabulated_flat()}) {
    double prev = 1.0;
    for (int i = 0; i <= 24; ++i) {
      const double f_s = (0.25 + i * (2.5 - 0.25) / 24.0) * kFm;
      const double z = nmse(m, f_s);
      CHECK(z <= prev + 1e-9);
      CHECK(z >= 0.0);
      CHECK(z <= 1.0);
      prev = z;
    }
  }
}

TEST_CASE("multimodal nmse is not monotone in f_s") {
  // Bandpass spectra alias benignly at some sub-Nyquist rates; this is the
  // documented counterexample to the monotone-zeta assumption.
  const auto m = multimodal();
  const double at_precise = nmse(m, 1.25 * kFm);
  const double at_nyquist = nmse(m, 2.0 * kFm);
  CHECK(at_precise == doctest::Approx(0.1172).epsilon(5e-3));
  CHECK(at_precise < at_nyquist);
}

TEST_CASE("compactly supported models reach zero at and above Nyquist") {
  for (const auto& m : {flat(), tabulated_flat()}) {
    const double bl = *bandlimit(m);
    CHECK(nmse(m, 2.0 * bl) <= 1e-9);
    CHECK(nmse(m, 3.1 * bl) <= 1e-9);
  }
}

TEST_CASE("optimal filter response") {
  const auto m = flat();
  SUBCASE("unity within the band at Nyquist") {
    for (double f : {0.0, 0.4 * kFm, -0.9 * kFm}) {
      CHECK(reconstruction_filter_response(m, 2.0 * kFm, f) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(reconstruction_filter_response(m, 2.0 * kFm, 1.5 * kFm) == 0.0);
  }
  SUBCASE("splits evenly between two equal replicas") {
    CHECK(reconstruction_filter_response(m, kFm, kFm / 4.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("gain stays within [0, 1] everywhere") {
    for (const auto& model : {flat(), unimodal(), multimodal()}) {
      for (int i = -40; i <= 40; ++i) {
        const double f = i * 0.1 * kFm;
        const double gain = reconstruction_filter_response(model, 1.3 * kFm, f);
        CHECK(gain >= 0.0);
        CHECK(gain <= 1.0);
      }
    }
  }
}

TEST_CASE("quantization nmse follows the 6 dB per bit rule") {
  CHECK(quantization_nmse(8) == doctest::Approx(1.5849e-5).epsilon(1e-4));
  CHECK(quantization_nmse(10) == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(quantization_nmse(1) == doctest::Approx(0.251189).epsilon(1e-5));
  CHECK_THROWS_AS((void)quantization_nmse(0), std::invalid_argument);
}

TEST_CASE("nmse_result bundles sampling and quantization floors") {
  const auto r = nmse_result(flat(), 2.0 * kFm, 8);
  CHECK(r.f_s == 2.0 * kFm);
  CHECK(r.zeta <= 1e-9);
  CHECK(r.quantization_zeta == doctest::Approx(std::pow(10.0, -4.8)));
}

TEST_CASE("analysis operations are safe to call concurrently") {
  const auto m = unimodal();
  const double reference = nmse(m, 1.3 * kFm);
  std::vector<std::thread> workers;
  std::array<double, 4> results{};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      double acc = 0.0;
      for (int i = 0; i < 8; ++i) {
        acc = nmse(m, 1.3 * kFm);
        acc += aliased_sum(m, 0.2 * kFm, 1.3 * kFm) * 0.0;
      }
      results[t] = acc;
    });
  }
  for (auto& w : workers) w.join();
  for (double r : results) CHECK(r == reference);
}

TEST_CASE("monte-carlo oracle agrees with the analytic nmse" * doctest::timeout(150)) {
  struct Pair {
    PsdModel model;
    double f_s;
  };
  const std::vector<Pair> pairs = {
      {flat(), 2.05 * kFm}, {flat(), 1.55 * kFm},      {flat(), 0.85 * kFm},
      {unimodal(), 2.0 * kFm}, {unimodal(), 1.0 * kFm},
      {multimodal(), 2.5 * kFm}, {multimodal(), 1.25 * kFm},
  };
  for (const auto& [model, f_s] : pairs) {
    const double analytic = nmse(model, f_s);
    const auto mc = esampling::testing::mc_nmse(model, f_s, 128);
    CAPTURE(f_s / kFm);
    CAPTURE(analytic);
    CAPTURE(mc.mean);
    CAPTURE(mc.std_error);
    CHECK(std::abs(mc.mean - analytic) <= 3.0 * mc.std_error + 1e-9);
  }
}
