// Copyright 2026 The g1kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks: one PASS/FAIL line per criterion with its runtime.
// Exits nonzero when any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "g1kit/g1kit.hpp"

namespace {

using namespace g1kit;
namespace cx = counterexample;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CommandResult {
  int code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(G1KIT_CLI) + " " + args + " 2>&1";
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config_flags(const ConstructionConfig& c) {
  return "--steps " + std::to_string(c.steps) + " --weights " + to_string(c.weights) +
         " --limit " + to_string(c.limit) + " --corners " + to_string(c.corners) + " --rule " +
         to_string(c.rule);
}

Rational random_rational(std::mt19937& gen) {
  std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
  return Rational(num(gen)) / Rational(den(gen));
}

Point3 random_point(std::mt19937& gen) {
  return Point3(random_rational(gen), random_rational(gen), random_rational(gen));
}

std::vector<Rational> concat(std::initializer_list<std::vector<Rational>> parts) {
  std::vector<Rational> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Outcome derivative_rows() {
  const EdgeDerivatives d = edge_derivatives(cx::edge_table_fixture());
  const auto dp2 = cx::coefficients(d.dp2), dp1 = cx::coefficients(d.dp1),
             dq2 = cx::coefficients(d.dq2);
  const auto t2 = cx::target_vector(cx::kDp2), t1 = cx::target_vector(cx::kDp1),
             tq = cx::target_vector(cx::kDq2);
  const bool each = cx::proportional(dp2, t2) && cx::proportional(dp1, t1) &&
                    cx::proportional(dq2, tq);
  const bool joint = cx::proportional(concat({dp2, dp1, dq2}), concat({t2, t1, tq}));
  const bool primitive = normalize_primitive(concat({dp2, dp1, dq2})).ints ==
                         normalize_primitive(concat({t2, t1, tq})).ints;
  return {each && joint && primitive,
          "each polynomial proportional: " + std::string(each ? "yes" : "no") +
              ", one common scale: " + (joint ? "yes" : "no")};
}

Outcome determinant() {
  const G1Report r = g1_necessary_test(cx::edge_table_fixture());
  const std::vector<BigInt> expected(cx::kDeterminant.begin(), cx::kDeterminant.end());
  std::string ints;
  for (const auto& v : r.det_primitive.ints) ints += (ints.empty() ? "" : " ") + v.str();
  return {r.det_primitive.ints == expected && r.verdict == Verdict::NotG1,
          "primitive [" + ints + "], verdict " + to_string(r.verdict)};
}

Outcome zero_anchors() {
  // Hand determinant of the first coefficient vectors of the three rows.
  const Rational hand = det3(Point3(-1, 2, -1), Point3(2, -1, -1), Point3(1, 1, -2));
  const G1Report r = g1_necessary_test(cx::edge_table_fixture());
  const auto& c = r.det_poly.coeffs();
  const bool structural = c[0] == 0 && c[6] == 0 && c[7] == 0 && c[8] == 0;
  const bool nonzero_middle = c[1] != 0 && c[5] != 0;
  return {hand == 0 && structural && nonzero_middle,
          "hand determinant " + to_string(hand) + ", coefficients 0, 6, 7, 8 zero: " +
              (structural ? "yes" : "no")};
}

Outcome mirror_soundness() {
  std::mt19937 gen(2026);
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    EdgeData e;
    for (int i = 0; i < 4; ++i) {
      e.row_p1[i] = random_point(gen);
      e.row_b[i] = random_point(gen);
      e.row_q2[i] = e.row_b[i] * Rational(2) - e.row_p1[i];
    }
    const G1Report r = g1_necessary_test(e);
    if (r.det_poly.is_zero() && r.unbiased_ok) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 random mirror fixtures coplanar and unbiased"};
}

Outcome doo_sabin() {
  const Mesh tetra = make_tetrahedron();
  const Mesh one = ds_step(tetra, WeightVariant::Classical);
  const MeshStats s = one.stats();
  bool counts = s.vertex_count == 12 && s.edge_count == 24 && s.face_count == 14 && s.euler == 2 &&
                s.vertex_valence_histogram == std::map<std::size_t, std::size_t>{{4, 12}};
  bool identities = true;
  for (const Mesh& m : {make_tetrahedron(), make_cube(), make_triangular_prism()}) {
    const RefinementTrace t = ds_refine(m, 3, WeightVariant::Classical);
    for (int L = 0; L < 3; ++L) {
      const Mesh &a = t.meshes[L], &b = t.meshes[L + 1];
      identities = identities && b.vertex_count() == 2 * a.edge_count() &&
                   b.edge_count() == 4 * a.edge_count() &&
                   b.face_count() == a.face_count() + a.vertex_count() + a.edge_count() &&
                   b.euler() == 2;
    }
  }
  std::mt19937 gen(7);
  int equivariant = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rational a[3][3], det;
    do {
      for (auto& row : a)
        for (auto& v : row) v = random_rational(gen);
      det = det3(Point3(a[0][0], a[0][1], a[0][2]), Point3(a[1][0], a[1][1], a[1][2]),
                 Point3(a[2][0], a[2][1], a[2][2]));
    } while (det <= 0);
    const Point3 shift = random_point(gen);
    auto f = [&](const Point3& p) {
      Point3 r = shift;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += a[i][j] * p[j];
      return r;
    };
    auto map = [&](const Mesh& m) {
      std::vector<Point3> v;
      for (const auto& p : m.vertices()) v.push_back(f(p));
      return Mesh(v, m.faces());
    };
    const Mesh base = trial % 2 ? make_cube() : make_tetrahedron();
    const Mesh lhs = map(ds_refine(base, 2, WeightVariant::Classical).finest());
    const Mesh rhs = ds_refine(map(base), 2, WeightVariant::Classical).finest();
    if (lhs.vertices() == rhs.vertices() && lhs.faces() == rhs.faces()) ++equivariant;
  }
  return {counts && identities && equivariant == 20,
          "V=" + std::to_string(s.vertex_count) + " E=" + std::to_string(s.edge_count) +
              " F=" + std::to_string(s.face_count) + ", identities " +
              (identities ? "hold" : "fail") + ", affine maps " + std::to_string(equivariant) +
              "/20"};
}

Outcome gate(const fs::path& work) {
  const CommandResult repro = run_cli("repro-counterexample");
  const bool repro_notg1 = repro.code == 1 && repro.out.find("verdict: NotG1") != std::string::npos;
  const auto best = cx::search().front().config;
  const std::string mesh = (work / "tetrahedron.off").string();
  const std::string json = (work / "best.json").string();
  write_file(mesh, save_mesh(make_tetrahedron(cx::kPublishedScale), MeshFormat::OFF));
  const CommandResult built = run_cli("construct " + mesh + " " + config_flags(best) + " -o " + json);
  const CommandResult check = run_cli("check-g1 " + json);
  return {repro_notg1 && built.code == 0 && check.code == 1,
          "repro-counterexample exit " + std::to_string(repro.code) + ", check-g1 exit " +
              std::to_string(check.code) + " on " + best.name()};
}

Outcome search_report() {
  const CommandResult a = run_cli("search --json"), b = run_cli("search --json");
  if (a.code != 0) return {false, "search exited " + std::to_string(a.code)};
  const auto doc = nlohmann::json::parse(a.out);
  const bool complete = doc.size() == cx::search_space().size();
  const bool deterministic = a.out == b.out;
  int exact = 0, pipeline_pass = 0;
  for (const auto& r : cx::search()) {
    if (r.residual != 0) continue;
    ++exact;
    const CommandResult repro = run_cli("repro-counterexample " + config_flags(r.config));
    if (repro.out.find("edge table vs published: PASS") != std::string::npos) ++pipeline_pass;
  }
  return {complete && deterministic && pipeline_pass == exact,
          std::to_string(doc.size()) + " configs ranked, deterministic: " +
              (deterministic ? "yes" : "no") + ", exact matches " + std::to_string(exact) +
              ", pipeline PASS for " + std::to_string(pipeline_pass)};
}

Outcome normal_jumps() {
  const Mesh tetra = make_tetrahedron(cx::kPublishedScale);
  const PatchComplex c = build_complex(tetra, ConstructionConfig{});
  const double jump = normal_jump(cx::counterexample_edge(c, tetra), 64).max_angle;
  std::mt19937 gen(11);
  double mirror = 0;
  for (int trial = 0; trial < 20; ++trial) {
    EdgeData e;
    for (int i = 0; i < 4; ++i) {
      e.row_p1[i] = random_point(gen);
      e.row_b[i] = random_point(gen);
      e.row_q2[i] = e.row_b[i] * Rational(2) - e.row_p1[i];
    }
    mirror = std::max(mirror, normal_jump(e, 64).max_angle);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "counterexample edge %.6g rad, mirror fixtures %.3g rad", jump,
                mirror);
  return {jump > 0 && mirror < 1e-12, buf};
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "g1kit_acceptance";
  fs::create_directories(work);

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"edge-table derivative rows", 1, derivative_rows},
      {"edge-table determinant and verdict", 1, determinant},
      {"structural zero coefficients", 1, zero_anchors},
      {"mirror fixture soundness", 1, mirror_soundness},
      {"Doo-Sabin combinatorics and equivariance", 5, doo_sabin},
      {"counterexample gate", 10, [&] { return gate(work); }},
      {"construction search report", 30, search_report},
      {"normal-jump consistency", 2, normal_jumps},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s  %-42s %7.3fs (budget %gs)  %s%s\n", pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_s, o.detail.c_str(), in_time ? "" : " [over budget]");
  }
  fs::remove_all(work);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures ? 1 : 0;
}
