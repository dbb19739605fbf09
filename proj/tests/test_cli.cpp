#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mafr/matrix.hpp"

#ifndef MAFR_CLI_PATH
#error "MAFR_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mafr_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MAFR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// numeric matrix from a csv written by the tool; skips the header and,
// when asked, a leading id column
mafr::Matrix load_csv_matrix(const fs::path& p, bool drop_first_col = false) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        bool first = true;
        while (start <= line.size()) {
            const std::size_t pos = line.find(',', start);
            const std::string tok =
                line.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            if (!(first && drop_first_col)) row.push_back(std::stod(tok));
            first = false;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        rows.push_back(std::move(row));
    }
    REQUIRE(!rows.empty());
    mafr::Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == rows[0].size());
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

} // namespace

TEST_CASE("simulate writes a deterministic dataset") {
    TempDir t1, t2, t3;
    CHECK(run_cli("simulate --seed 7 --num-curves 12 --num-basis 9 --out " +
                  t1.path.string()) == 0);
    CHECK(run_cli("simulate --seed 7 --num-curves 12 --num-basis 9 --out " +
                  t2.path.string()) == 0);
    CHECK(run_cli("simulate --seed 8 --num-curves 12 --num-basis 9 --out " +
                  t3.path.string()) == 0);
    CHECK(fs::exists(t1.path / "manifest.json"));
    const std::string a = slurp(t1.path / "dataset.csv");
    CHECK(a == slurp(t2.path / "dataset.csv"));
    CHECK(a != slurp(t3.path / "dataset.csv"));
    CHECK(slurp(t1.path / "manifest.json").find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("single-curve simulation") {
    TempDir t;
    CHECK(run_cli("simulate --num-curves 1 --num-basis 5 --out " + t.path.string()) == 0);
    std::ifstream in(t.path / "dataset.csv");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1 + 101); // header + one curve on the default grid
}

TEST_CASE("pipeline bundle is complete and self-consistent") {
    TempDir t;
    const int rc = run_cli(
        "pipeline --num-curves 40 --num-basis 11 --seed 3 --retain 0.99 "
        "--penalty harmonic:1 --eval-grid 51 --out " +
        t.path.string());
    REQUIRE(rc == 0);
    for (const char* name :
         {"dataset.csv", "coefficients.csv", "components.csv", "scores.csv", "variances.csv",
          "rotation_matrix.csv", "rotated_components.csv", "rotated_scores.csv",
          "penalty_eigenvalues.csv", "rotated_variances.csv", "roughness.csv",
          "curves_eval.csv", "components_eval.csv", "rotated_components_eval.csv",
          "manifest.json"}) {
        CHECK_MESSAGE(fs::exists(t.path / name), name);
    }

    const mafr::Matrix components = load_csv_matrix(t.path / "components.csv");
    const mafr::Matrix rotated = load_csv_matrix(t.path / "rotated_components.csv");
    const mafr::Matrix u = load_csv_matrix(t.path / "rotation_matrix.csv");
    const mafr::Matrix variances = load_csv_matrix(t.path / "variances.csv");
    const mafr::Matrix rot_var = load_csv_matrix(t.path / "rotated_variances.csv");

    // rotated_components = U^T * components
    const mafr::Matrix expect_rot = matmul(transpose(u), components);
    REQUIRE(expect_rot.rows() == rotated.rows());
    for (std::size_t i = 0; i < rotated.rows(); ++i) {
        for (std::size_t j = 0; j < rotated.cols(); ++j) {
            CHECK(std::abs(rotated(i, j) - expect_rot(i, j)) < 1e-10);
        }
    }

    // rotated variances = diag(U^T Sigma U) recomputed from the bundle
    std::vector<double> sig(variances.rows());
    for (std::size_t i = 0; i < sig.size(); ++i) sig[i] = variances(i, 0);
    const mafr::Matrix usu = matmul(transpose(u), matmul(mafr::Matrix::diagonal(sig), u));
    for (std::size_t i = 0; i < rot_var.rows(); ++i) {
        CHECK(std::abs(rot_var(i, 0) - usu(i, i)) < 1e-10);
    }

    // scores rotate consistently
    const mafr::Matrix scores = load_csv_matrix(t.path / "scores.csv", true);
    const mafr::Matrix rot_scores = load_csv_matrix(t.path / "rotated_scores.csv", true);
    const mafr::Matrix expect_scores = matmul(scores, u);
    for (std::size_t i = 0; i < rot_scores.rows(); ++i) {
        for (std::size_t j = 0; j < rot_scores.cols(); ++j) {
            CHECK(std::abs(rot_scores(i, j) - expect_scores(i, j)) < 1e-10);
        }
    }
}

TEST_CASE("a manifest reproduces its bundle") {
    TempDir t1, t2;
    REQUIRE(run_cli("pipeline --num-curves 25 --num-basis 9 --seed 11 --retain 5 "
                    "--penalty d1 --out " +
                    t1.path.string()) == 0);
    REQUIRE(run_cli("pipeline --config " + (t1.path / "manifest.json").string() + " --out " +
                    t2.path.string()) == 0);
    for (const char* name : {"scores.csv", "rotated_components.csv", "penalty_eigenvalues.csv"}) {
        CHECK(slurp(t1.path / name) == slurp(t2.path / name));
    }
}

TEST_CASE("csv input: demand-style wide format through the d2 workflow") {
    TempDir t;
    const fs::path csv = t.path / "demand.csv";
    {
        std::ofstream out(csv);
        out << "curve_id";
        for (int p = 0; p < 48; ++p) out << ',' << 0.25 + 0.5 * p;
        out << '\n';
        for (int i = 0; i < 30; ++i) {
            out << "day" << i;
            for (int p = 0; p < 48; ++p) {
                const double tt = 0.25 + 0.5 * p;
                const double v = 10.0 + 2.0 * std::sin(2 * 3.14159265358979 * tt / 24.0 + i) +
                                 0.3 * std::cos(4 * 3.14159265358979 * tt / 24.0) +
                                 0.05 * ((i * 37 + p * 11) % 17 - 8.0);
                out << ',' << v;
            }
            out << '\n';
        }
    }
    const int rc = run_cli(
        "rotate --input " + csv.string() +
        " --basis '{\"kind\":\"bspline\",\"interval\":[0,24],\"order\":4,\"num_basis\":12}'"
        " --retain 5 --penalty d2 --out " +
        t.path.string());
    REQUIRE(rc == 0);
    const mafr::Matrix scores = load_csv_matrix(t.path / "scores.csv", true);
    CHECK(scores.rows() == 30);
    CHECK(scores.cols() == 5);
    CHECK(fs::exists(t.path / "roughness.csv"));
}

TEST_CASE("empty csv input exits with code 2") {
    TempDir t;
    const fs::path csv = t.path / "empty.csv";
    std::ofstream(csv).close();
    const int rc = run_cli("fpca --input " + csv.string() +
                           " --basis '{\"kind\":\"fourier\",\"interval\":[0,1],\"size\":5}'"
                           " --out " +
                           t.path.string());
    CHECK(rc == 2);
}

TEST_CASE("numerical failures exit with code 3") {
    TempDir t;
    const fs::path csv = t.path / "tiny.csv";
    {
        std::ofstream out(csv);
        out << "curve_id,t,value\n";
        for (int i = 0; i < 2; ++i) {
            for (int p = 0; p < 4; ++p) {
                out << 'c' << i << ',' << 0.25 * p << ',' << (i + p) << '\n';
            }
        }
    }
    // 4 points cannot determine 9 coefficients without a penalty
    const int rc = run_cli("fpca --input " + csv.string() +
                           " --basis '{\"kind\":\"fourier\",\"interval\":[0,0.75],\"size\":9}'"
                           " --out " +
                           t.path.string());
    CHECK(rc == 3);
}

TEST_CASE("long-format csv input round-trips through fit") {
    TempDir t;
    REQUIRE(run_cli("simulate --seed 5 --num-curves 8 --num-basis 7 --out " +
                    t.path.string()) == 0);
    TempDir t2;
    const int rc = run_cli(
        "fit --input " + (t.path / "dataset.csv").string() +
        " --basis '{\"kind\":\"fourier\",\"interval\":[0,1],\"size\":7,\"orthonormal\":true}'"
        " --out " +
        t2.path.string());
    REQUIRE(rc == 0);
    CHECK(fs::exists(t2.path / "coefficients.csv"));
    const mafr::Matrix coefs = load_csv_matrix(t2.path / "coefficients.csv", true);
    CHECK(coefs.rows() == 8);
    CHECK(coefs.cols() == 7);
}
