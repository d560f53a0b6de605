// Copyright 2026 The cvdkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "cvdkit/color.hpp"
#include "cvdkit/error.hpp"
#include "cvdkit/rng.hpp"

using namespace cvd;

namespace {

// The sRGB decoding curve written out longhand, independent of the library.
double decode_by_hand(double v) { return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4); }

}  // namespace

TEST_SUITE("color") {

TEST_CASE("transfer function fixed points") {
  CHECK(srgb_to_linear({0, 0, 0}).r == 0.0);
  const LinearRGB one = srgb_to_linear({1, 1, 1});
  CHECK(one.r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.g == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.b == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(linear_to_srgb({0, 0, 0}).g == 0.0);
}

TEST_CASE("mid gray decodes to 0.2140") {
  const LinearRGB c = srgb_to_linear({0.5, 0.5, 0.5});
  CHECK(std::abs(c.r - decode_by_hand(0.5)) < 1e-15);
  CHECK(c.g == doctest::Approx(0.2140411405).epsilon(1e-9));
  CHECK(std::abs(c.b - 0.2140) < 5e-5);

  const UnitSRGB back = linear_to_srgb({0.2140, 0.2140, 0.2140});
  CHECK(std::abs(back.r - 0.5) < 1e-4);
}

TEST_CASE("transfer round trip") {
  const UnitSRGB v{0.25, 0.5, 0.75};
  const UnitSRGB r = linear_to_srgb(srgb_to_linear(v));
  CHECK(std::abs(r.r - v.r) <= 1e-6);
  CHECK(std::abs(r.g - v.g) <= 1e-6);
  CHECK(std::abs(r.b - v.b) <= 1e-6);
}

TEST_CASE("transfer is monotone and stays in range") {
  double prev = -1;
  for (int i = 0; i <= 1000; ++i) {
    const double x = srgb_to_linear({i / 1000.0, 0, 0}).r;
    CHECK(x > prev);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0 + 1e-15);
    prev = x;
  }
}

TEST_CASE("out of range linear input names the channel") {
  try {
    linear_to_srgb({0.5, 1.5, 0.5});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find('g') != std::string::npos);
  }
  CHECK_THROWS_AS(linear_to_srgb({-0.1, 0, 0}), DomainError);
  CHECK_THROWS_AS(srgb_to_linear({0, 0, 2}), DomainError);
}

TEST_CASE("Lab of white, black and mid gray") {
  const Lab w = linear_to_lab({1, 1, 1});
  CHECK(w.L == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(std::abs(w.a) <= 1e-3);
  CHECK(std::abs(w.b) <= 1e-3);

  const Lab k = linear_to_lab({0, 0, 0});
  CHECK(k.L == 0.0);
  CHECK(k.a == 0.0);
  CHECK(k.b == 0.0);

  const Lab g = linear_to_lab({0.5, 0.5, 0.5});
  CHECK(g.L > 70);
  CHECK(g.L < 80);
  // 116 * cbrt(0.5) - 16
  CHECK(g.L == doctest::Approx(76.069261).epsilon(1e-7));
  CHECK(std::abs(g.a) < 1e-9);
}

TEST_CASE("Lab inverse") {
  const LinearRGB w = lab_to_linear({100, 0, 0});
  CHECK(w.r == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.g == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.b == doctest::Approx(1.0).epsilon(1e-9));

  const LinearRGB v{0.2, 0.6, 0.9};
  const LinearRGB r = lab_to_linear(linear_to_lab(v));
  CHECK(std::abs(r.r - v.r) <= 1e-4);
  CHECK(std::abs(r.g - v.g) <= 1e-4);
  CHECK(std::abs(r.b - v.b) <= 1e-4);

  const LinearRGB far = lab_to_linear({50, 200, 0});
  CHECK_FALSE(in_gamut(far));
  CHECK(far.r > 1.0);
  CHECK(far.g < 0.0);
}

TEST_CASE("8-bit round trip through Lab over 1000 colors") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const SRGB8 c{static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
                  static_cast<std::uint8_t>(rng.below(256))};
    CHECK(lab_to_srgb8(to_lab(c)) == c);
  }
  for (int i = 0; i < 1000; ++i) {
    const UnitSRGB u{rng.uniform(), rng.uniform(), rng.uniform()};
    const UnitSRGB r = linear_to_srgb(clamp_gamut(lab_to_linear(linear_to_lab(srgb_to_linear(u)))));
    CHECK(std::abs(r.r - u.r) <= 1e-4);
    CHECK(std::abs(r.g - u.g) <= 1e-4);
    CHECK(std::abs(r.b - u.b) <= 1e-4);
  }
}

TEST_CASE("delta_e is a metric") {
  CHECK(delta_e({0, 0, 0}, {100, 0, 0}) == 100.0);
  Rng rng(7);
  auto random_lab = [&] { return Lab{rng.uniform(0, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)}; };
  for (int i = 0; i < 500; ++i) {
    const Lab a = random_lab(), b = random_lab(), c = random_lab();
    CHECK(delta_e(a, a) == 0.0);
    CHECK(delta_e(a, b) == delta_e(b, a));
    CHECK(delta_e(a, b) > 0.0);
    CHECK(delta_e(a, c) <= delta_e(a, b) + delta_e(b, c) + 1e-12);
  }
}

TEST_CASE("hex parsing") {
  CHECK(parse_hex("#C62828") == SRGB8{0xC6, 0x28, 0x28});
  CHECK(parse_hex("00ff7f") == SRGB8{0, 255, 127});
  CHECK(to_hex({0, 255, 127}) == "#00FF7F");
  CHECK_THROWS_AS(parse_hex("#12345"), ParameterError);
  CHECK_THROWS_AS(parse_hex("#12345G"), ParameterError);
}

TEST_CASE("LMS matrix maps white to (1,1,1)") {
  const LMS w = linear_to_lms({1, 1, 1});
  CHECK(w.l == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.s == doctest::Approx(1.0).epsilon(1e-12));
  const LinearRGB back = lms_to_linear(linear_to_lms({0.3, 0.1, 0.7}));
  CHECK(back.r == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(back.b == doctest::Approx(0.7).epsilon(1e-12));
}

}  // TEST_SUITE
