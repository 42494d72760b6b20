#pragma once

// Small files in the exact column layouts of the real dataset distributions,
// so loader and matrix tests run against the shipped manifest.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace adaptreg::testing {

struct FixtureCounts {
  std::size_t air_quality = 400;
  std::size_t air_quality_blank_tail = 3;
  std::size_t air_quality_sentinel_rows = 0;  // filled in by the writer
  std::size_t concrete = 300;
  std::size_t protein = 400;
  std::size_t turbine_per_year = 80;
};

inline std::filesystem::path shipped_manifest() {
  return std::filesystem::path(ADAPTREG_SOURCE_DIR) / "data" / "manifest.json";
}

inline std::filesystem::path shipped_matrix() {
  return std::filesystem::path(ADAPTREG_SOURCE_DIR) / "configs" / "experiment_matrix.json";
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  // Per-process suffix: ctest may run several test processes at once.
  auto dir = std::filesystem::temp_directory_path() /
             ("adaptreg_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

namespace detail {

inline std::string num(double v, int digits, bool comma_decimal = false) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  std::string s(buf);
  if (comma_decimal) {
    for (char& c : s) {
      if (c == '.') c = ',';
    }
  }
  return s;
}

}  // namespace detail

/// Writes every dataset of the shipped manifest into dir.
inline FixtureCounts write_fixture_data(const std::filesystem::path& dir, unsigned seed = 7) {
  FixtureCounts counts;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  using detail::num;

  {
    std::ofstream out(dir / "AirQualityUCI.csv");
    out << "Date;Time;CO(GT);PT08.S1(CO);NMHC(GT);C6H6(GT);PT08.S2(NMHC);NOx(GT);PT08.S3(NOx);"
           "NO2(GT);PT08.S4(NO2);PT08.S5(O3);T;RH;AH;;\n";
    for (std::size_t i = 0; i < counts.air_quality; ++i) {
      const double drift = i > counts.air_quality / 2 ? 1.0 : 0.0;
      std::vector<double> s(5);
      for (auto& v : s) v = 1000.0 + 200.0 * n01(rng) + 150.0 * drift;
      const double t = 15.0 + 5.0 * n01(rng);
      const double rh = 50.0 + 10.0 * n01(rng);
      const double ah = 1.0 + 0.2 * n01(rng);
      const double co = 2.0 + 0.004 * (s[0] - 1000.0) + 0.01 * t + 0.3 * n01(rng);
      const double no2 = 100.0 + 0.05 * (s[3] - 1000.0) + 10.0 * n01(rng);
      double nmhc = 200.0 + 0.3 * (s[1] - 1000.0) + 20.0 * n01(rng);
      // Every 37th row carries the -200 missing-value marker, like the real file.
      if (i % 37 == 5) {
        nmhc = -200.0;
        ++counts.air_quality_sentinel_rows;
      }
      out << "10/03/2004;" << (i % 24) << ".00.00;" << num(co, 1, true) << ';' << num(s[0], 0)
          << ';' << num(nmhc, 0) << ';' << num(11.9, 1, true) << ';' << num(s[1], 0) << ";166;"
          << num(s[2], 0) << ';' << num(no2, 0) << ';' << num(s[3], 0) << ';' << num(s[4], 0)
          << ';' << num(t, 1, true) << ';' << num(rh, 1, true) << ';' << num(ah, 4, true)
          << ";;\n";
    }
    for (std::size_t i = 0; i < counts.air_quality_blank_tail; ++i) out << ";;;;;;;;;;;;;;;;\n";
  }

  {
    std::ofstream out(dir / "Concrete_Data.csv");
    out << "Cement,BlastFurnaceSlag,FlyAsh,Water,Superplasticizer,CoarseAggregate,FineAggregate,"
           "Age,CompressiveStrength\n";
    for (std::size_t i = 0; i < counts.concrete; ++i) {
      std::vector<double> f{280 + 100 * n01(rng), 70 + 80 * n01(rng), 50 + 60 * n01(rng),
                            180 + 20 * n01(rng),  6 + 5 * n01(rng),   970 + 70 * n01(rng),
                            770 + 80 * n01(rng),  45 + 60 * n01(rng)};
      const double y = 35 + 0.1 * (f[0] - 280) - 0.2 * (f[3] - 180) + 0.1 * f[7] + 5 * n01(rng);
      for (double v : f) out << num(v, 2) << ',';
      out << num(y, 3) << '\n';
    }
  }

  {
    std::ofstream out(dir / "CASP.csv");
    out << "RMSD,F1,F2,F3,F4,F5,F6,F7,F8,F9\n";
    for (std::size_t i = 0; i < counts.protein; ++i) {
      std::vector<double> f(9);
      for (std::size_t j = 0; j < 9; ++j) f[j] = 10.0 * (1.0 + static_cast<double>(j)) + 3.0 * n01(rng);
      double y = 7.0 + 0.4 * (f[0] - 10.0) - 0.2 * (f[4] - 50.0) + 2.0 * n01(rng);
      if (y < 0) y = 0;
      out << num(y, 3);
      for (double v : f) out << ',' << num(v, 4);
      out << '\n';
    }
  }

  for (int year = 2011; year <= 2015; ++year) {
    std::ofstream out(dir / ("gt_" + std::to_string(year) + ".csv"));
    out << "AT,AP,AH,AFDP,GTEP,TIT,TAT,TEY,CDP,CO,NOX\n";
    for (std::size_t i = 0; i < counts.turbine_per_year; ++i) {
      const double at = 17 + 7 * n01(rng) + (year - 2011);
      const double ap = 1013 + 6 * n01(rng);
      const double ah = 77 + 14 * n01(rng);
      const double afdp = 3.9 + 0.7 * n01(rng);
      const double gtep = 25.5 + 4 * n01(rng);
      const double tit = 1081 + 17 * n01(rng);
      const double tat = 546 + 6 * n01(rng);
      const double cdp = 12 + 1.1 * n01(rng);
      const double tey = 133 + 4.0 * (gtep - 25.5) + 3.0 * (cdp - 12) + 2 * n01(rng);
      const double co = 2.3 - 0.05 * (tit - 1081) + 0.8 * n01(rng);
      const double nox = 65 - 0.9 * (at - 17) + 5 * n01(rng);
      out << num(at, 4) << ',' << num(ap, 3) << ',' << num(ah, 3) << ',' << num(afdp, 4) << ','
          << num(gtep, 3) << ',' << num(tit, 1) << ',' << num(tat, 2) << ',' << num(tey, 2) << ','
          << num(cdp, 3) << ',' << num(co, 4) << ',' << num(nox, 3) << '\n';
    }
  }
  return counts;
}

}  // namespace adaptreg::testing
