// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failures (capped at 1).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "genmetrics/efficiency.hpp"
#include "genmetrics/frechet.hpp"
#include "genmetrics/image_codec.hpp"
#include "genmetrics/manifold.hpp"
#include "genmetrics/pixelpipe.hpp"
#include "genmetrics/ranking.hpp"
#include "genmetrics/scores.hpp"
#include "support.hpp"

using namespace genmetrics;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(const std::string& name, double time_limit_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (o.pass && time_limit_s > 0 && secs >= time_limit_s) {
        o.pass = false;
        o.detail = "over time limit";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-34s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

GaussianSummary gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    return GaussianSummary{static_cast<std::size_t>(mean.size()), mean, cov, 100};
}

FeatureSet uniform_features(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    std::vector<float> v(n * d);
    for (auto& x : v) x = u(gen);
    return FeatureSet(n, d, std::move(v));
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::vector<std::uint8_t> bytes_of(const fs::path& p) { return read_file(p); }

// Every regular file under `a` exists under `b` with identical bytes.
bool trees_identical(const fs::path& a, const fs::path& b, std::string& diff, std::size_t& count) {
    count = 0;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), a);
        if (!fs::exists(b / rel) || bytes_of(e.path()) != bytes_of(b / rel)) {
            diff = rel.string();
            return false;
        }
        ++count;
    }
    return true;
}

nlohmann::json load_json(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

// Synthetic corpus: smooth gradients plus seeded blobs, varied sizes.
void write_corpus(const fs::path& dir, int count, std::uint64_t seed) {
    fs::create_directories(dir);
    std::mt19937_64 gen(seed);
    for (int i = 0; i < count; ++i) {
        const int w = 40 + static_cast<int>(gen() % 40), h = 40 + static_cast<int>(gen() % 40);
        const double cx = (gen() % 1000) / 1000.0 * w, cy = (gen() % 1000) / 1000.0 * h;
        const double hue = (gen() % 1000) / 1000.0;
        std::vector<std::uint8_t> v;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double r2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (0.1 * w * h);
                const double blob = std::exp(-r2);
                for (int c = 0; c < 3; ++c) {
                    const double base = 0.5 + 0.5 * std::sin(6.283 * (hue + c / 3.0) + 0.05 * (x + y));
                    v.push_back(static_cast<std::uint8_t>(std::lround(255.0 * (0.6 * base + 0.4 * blob))));
                }
            }
        char name[32];
        std::snprintf(name, sizeof(name), "img_%03d.png", i);
        save_png(dir / name, PixelBuffer::from_u8(w, h, 3, std::move(v)));
    }
}

struct PipelineRun {
    bool ok = true;
    std::string failure;
};

// prep -> toy features -> metrics -> compare into `root`.
PipelineRun run_pipeline(const fs::path& corpus_real, const fs::path& corpus_fake, const fs::path& root) {
    const std::string cli = GENMETRICS_CLI_PATH, extract = GENMETRICS_EXTRACT_PATH;
    fs::create_directories(root);
    const std::vector<std::pair<std::string, std::string>> steps{
        {"prep real", cli + " prep --input " + q(corpus_real) + " --out " + q(root / "prep_real") + " --resolution 32"},
        {"prep fake", cli + " prep --input " + q(corpus_fake) + " --out " + q(root / "prep_fake") + " --resolution 32"},
        {"extract real", extract + " --images " + q(root / "prep_real") + " --out " + q(root / "real.gmf1") +
                             " --classes 8 --labels"},
        {"extract fake", extract + " --images " + q(root / "prep_fake") + " --out " + q(root / "fake.gmf1") +
                             " --classes 8 --labels"},
        {"metrics same", cli + " metrics --real " + q(root / "real.gmf1") + " --fake " + q(root / "real.gmf1") +
                             " --ref-split train:64 --out " + q(root / "same.json")},
        {"metrics", cli + " metrics --real " + q(root / "real.gmf1") + " --fake " + q(root / "fake.gmf1") +
                        " --ref-split train:64 --out " + q(root / "report.json")},
        {"compare", cli + " compare --source " + q(root / "real.gmf1") + " --target " + q(root / "fake.gmf1") +
                        " --target " + q(root / "real.gmf1") + " --fractions 0.25,0.5,1.0 --seed 7 --ref-split train:64" +
                        " --out " + q(root / "compare")},
    };
    for (const auto& [label, cmd] : steps)
        if (const int code = shell(cmd); code != 0) return {false, label + " exited " + std::to_string(code)};
    return {};
}

Outcome frechet_closed_form() {
    Outcome o;
    const double v = frechet_distance(gaussian(Eigen::VectorXd::Constant(1, 0.0), Eigen::MatrixXd::Constant(1, 1, 1.0)),
                                      gaussian(Eigen::VectorXd::Constant(1, 3.0), Eigen::MatrixXd::Constant(1, 1, 4.0)));
    o.require(std::abs(v - 10.0) <= 1e-9 * 10.0, "1-D case gave " + fmt("%.17g", v));
    std::mt19937_64 gen(31337);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        auto spd = [&] {
            Eigen::MatrixXd a(8, 8);
            for (int i = 0; i < 64; ++i) a(i / 8, i % 8) = n(gen);
            return Eigen::MatrixXd(a * a.transpose() / 8.0 + 0.05 * Eigen::MatrixXd::Identity(8, 8));
        };
        Eigen::VectorXd ma(8), mb(8);
        for (int i = 0; i < 8; ++i) {
            ma(i) = n(gen);
            mb(i) = n(gen);
        }
        const Eigen::MatrixXd ca = spd(), cb = spd();
        const double got = frechet_distance(gaussian(ma, ca), gaussian(mb, cb));
        const double want = static_cast<double>(oracle::frechet(ma.cast<long double>(), ca.cast<long double>(),
                                                                mb.cast<long double>(), cb.cast<long double>()));
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    o.require(worst <= 1e-8, "max rel error " + fmt("%.3g", worst));
    if (o.pass) o.detail = "1-D = 10; 50 x 8-D max rel err " + fmt("%.2e", worst);
    return o;
}

Outcome frechet_self_distance() {
    Outcome o;
    const auto fs = test_support::gaussian_features(5000, 2048, 99);
    const auto s = summarize(fs);
    const auto r = frechet_distance_detailed(s, s);
    o.require(r.value <= 1e-6, "FD = " + fmt("%.3g", r.value));
    if (o.pass) o.detail = "N=5000 D=2048 FD = " + fmt("%.3g", r.value);
    return o;
}

Outcome prdc_oracle() {
    Outcome o;
    std::mt19937_64 gen(4242);
    const std::size_t ks[] = {1, 3, 5};
    int instances = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 10 + gen() % 491, m = 10 + gen() % 491, d = 1 + gen() % 16;
        const std::size_t k_pr = ks[gen() % 3], k_dc = ks[gen() % 3];
        const bool gaussian = trial % 2 == 0;
        const auto src = gaussian ? test_support::gaussian_features(n, d, gen()) : uniform_features(n, d, gen());
        const auto tgt = gaussian ? test_support::gaussian_features(m, d, gen(), 0.25, 1.1)
                                  : uniform_features(m, d, gen());
        const auto r = prdc(src, tgt, {k_pr, k_dc});
        const auto b = oracle::prdc(test_support::rows_of(src), test_support::rows_of(tgt), k_pr, k_dc);
        const bool same = r.precision == b.precision && r.recall == b.recall && r.density == b.density &&
                          r.coverage == b.coverage;
        o.require(same, "instance " + std::to_string(trial) + " differs");
        ++instances;
    }
    if (o.pass) o.detail = std::to_string(instances) + " instances bit-identical";
    return o;
}

Outcome prdc_hand_case() {
    Outcome o;
    const FeatureSet src(3, 1, {0.0f, 1.0f, 4.0f}), tgt(2, 1, {0.5f, 10.0f});
    const auto r = prdc(src, tgt, {1, 1});
    const auto b = oracle::prdc(test_support::rows_of(src), test_support::rows_of(tgt), 1, 1);
    o.require(r.precision == 0.5 && r.recall == 1.0 && r.density == 1.0 && r.coverage == 2.0 / 3.0,
              "got (" + fmt("%g", r.precision) + ", " + fmt("%g", r.recall) + ", " + fmt("%g", r.density) + ", " +
                  fmt("%g", r.coverage) + ")");
    o.require(b.precision == r.precision && b.recall == r.recall && b.density == r.density && b.coverage == r.coverage,
              "enumeration oracle disagrees");
    if (o.pass) o.detail = "(0.5, 1, 1, 2/3)";
    return o;
}

Outcome classifier_score_cases() {
    Outcome o;
    for (std::size_t k : {2u, 10u, 1000u}) {
        const PosteriorSet uniform(4, k, std::vector<float>(4 * k, 1.0f / static_cast<float>(k)));
        const double u = classifier_score(uniform).mean;
        o.require(std::abs(u - 1.0) <= 1e-9, "uniform K=" + std::to_string(k) + " gave " + fmt("%.17g", u));
        std::vector<float> onehot(k * k, 0.0f);
        for (std::size_t i = 0; i < k; ++i) onehot[i * k + i] = 1.0f;
        const double s = classifier_score(PosteriorSet(k, k, onehot)).mean;
        o.require(std::abs(s - double(k)) <= 1e-9 * double(k), "one-hot K=" + std::to_string(k) + " gave " + fmt("%.17g", s));
    }
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + gen() % 20, n = 5 + gen() % 200;
        std::gamma_distribution<double> g(0.05 + (gen() % 100) / 50.0, 1.0);
        std::vector<float> v;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(k);
            double sum = 0.0;
            for (auto& x : row) sum += (x = g(gen) + 1e-12);
            for (auto x : row) v.push_back(static_cast<float>(x / sum));
        }
        const double s = classifier_score(PosteriorSet(n, k, v), 1 + gen() % 5).mean;
        o.require(s >= 1.0 && s <= double(k), "random instance outside [1, K]: " + fmt("%.17g", s));
    }
    if (o.pass) o.detail = "uniform -> 1, one-hot -> K, 200 random in [1, K]";
    return o;
}

Outcome quantization() {
    Outcome o;
    std::vector<std::uint8_t> all(256);
    for (int v = 0; v < 256; ++v) all[v] = static_cast<std::uint8_t>(v);
    const auto img = PixelBuffer::from_u8(256, 1, 1, all);
    o.require(quantize(normalize(img)) == img, "round trip not the identity");
    const auto ends = quantize(PixelBuffer::from_float(3, 1, 1, Storage::UnitFloat, {-1.0f, 0.0f, 1.0f}));
    o.require(ends.u8()[0] == 0 && ends.u8()[1] == 128 && ends.u8()[2] == 255, "endpoints wrong");
    if (o.pass) o.detail = "256/256 round trips; -1->0, 0->128, 1->255";
    return o;
}

Outcome resampler_goldens() {
    Outcome o;
    const auto dir = test_support::data_dir() / "golden";
    int count = 0, worst = 0;
    for (std::string pattern : {"checker", "rings"}) {
        const auto src = load_image(dir / ("src_" + pattern + ".png"));
        for (auto [name, f] : {std::pair{"bilinear", FilterKind::Bilinear}, std::pair{"bicubic", FilterKind::Bicubic},
                               std::pair{"lanczos", FilterKind::Lanczos}})
            for (std::string way : {"down", "up"}) {
                const auto golden = load_image(dir / (pattern + "_" + name + "_" + way + ".png"));
                const auto got = resize(src, golden.width(), golden.height(), f, true);
                for (std::size_t i = 0; i < got.size(); ++i)
                    worst = std::max(worst, std::abs(int(got.u8()[i]) - int(golden.u8()[i])));
                ++count;
            }
    }
    o.require(count == 12, "expected 12 goldens");
    o.require(worst <= 1, "max deviation " + std::to_string(worst) + " levels");
    if (o.pass) o.detail = std::to_string(count) + " goldens, max deviation " + std::to_string(worst) + " level(s)";
    return o;
}

Outcome efficiency_curves() {
    Outcome o;
    const std::size_t n = 10000, d = 16;
    const auto source = test_support::gaussian_features(n, d, 1);
    const auto target = test_support::gaussian_features(n, d, 2, 0.2, 1.1);
    const auto summary = summarize(source);
    std::vector<double> mean(kDefaultFractions.size(), 0.0);
    double worst_terminal = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto rel = relative_fd_curve(summary, target, kDefaultFractions, seed);
        o.require(rel.values.back() == 1.0, "relative terminal " + fmt("%.17g", rel.values.back()));
        const auto r2r = real_to_real_curve(source, kDefaultFractions, seed);
        worst_terminal = std::max(worst_terminal, r2r.values.back());
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += r2r.values[i] / 20.0;
    }
    o.require(worst_terminal <= 1e-6, "real-to-real terminal " + fmt("%.3g", worst_terminal));
    for (std::size_t i = 1; i < mean.size(); ++i)
        o.require(mean[i] <= mean[i - 1], "averaged curve rises at fraction " + fmt("%g", kDefaultFractions[i]));
    if (o.pass)
        o.detail = "relative terminal 1.0; r2r terminal " + fmt("%.1e", worst_terminal) + "; mean r2r " +
                   fmt("%.3g", mean.front()) + " -> " + fmt("%.1e", mean.back());
    return o;
}

Outcome end_to_end() {
    Outcome o;
    test_support::TempDir work("acceptance_e2e");
    write_corpus(work.path() / "corpus_real", 64, 100);
    write_corpus(work.path() / "corpus_fake", 64, 200);
    const auto first = run_pipeline(work.path() / "corpus_real", work.path() / "corpus_fake", work.path() / "run1");
    o.require(first.ok, first.failure);
    if (!o.pass) return o;
    const auto second = run_pipeline(work.path() / "corpus_real", work.path() / "corpus_fake", work.path() / "run2");
    o.require(second.ok, second.failure);
    if (!o.pass) return o;

    const auto root = work.path() / "run1";
    o.require(load_json(root / "prep_real" / "manifest.json")["files"].size() == 64, "prep did not write 64 files");
    std::vector<fs::path> reports{root / "same.json", root / "report.json"};
    for (const auto& e : fs::directory_iterator(root / "compare" / "reports")) reports.push_back(e.path());
    for (const auto& r : reports) {
        const auto errors = validate_report_json(load_json(r));
        o.require(errors.empty(), r.filename().string() + ": " + (errors.empty() ? "" : errors.front()));
    }
    // Cross-check with the published JSON Schema when jsonschema is available.
    if (shell("python3 -c 'import jsonschema'") == 0) {
        std::string cmd = "python3 -c \"import json,sys,jsonschema; s=json.load(open(sys.argv[1])); "
                          "[jsonschema.validate(json.load(open(p)), s) for p in sys.argv[2:]]\" " +
                          q(GENMETRICS_SCHEMA_PATH);
        for (const auto& r : reports) cmd += " " + q(r);
        o.require(shell(cmd) == 0, "jsonschema rejected a report");
    }
    const auto same = load_json(root / "same.json")["entries"];
    const double fd = same["FID"]["value"].get<double>();
    o.require(fd <= 1e-6, "identical inputs FID " + fmt("%.3g", fd));
    for (const char* m : {"Precision", "Recall", "Coverage"})
        o.require(same[m]["value"].get<double>() == 1.0, std::string("identical inputs ") + m + " != 1");

    std::string diff;
    std::size_t files = 0;
    o.require(trees_identical(root, work.path() / "run2", diff, files), "output differs between runs: " + diff);
    if (o.pass)
        o.detail = std::to_string(reports.size()) + " reports schema-valid; " + std::to_string(files) +
                   " files byte-identical; same-set FID " + fmt("%.1e", fd);
    return o;
}

MetricReport ranked_report(const std::string& model, double score, double fid) {
    const auto spec = BackboneRegistry::builtin().find("InceptionV3");
    MetricReport r;
    r.model_name = model;
    r.backbone = spec.name;
    r.set(spec, MetricKind::Score, score);
    r.set(spec, MetricKind::FrechetDistance, fid);
    r.protocol.reference_split = "train";
    r.protocol.reference_count = 50000;
    r.protocol.generated_count = 50000;
    return r;
}

Outcome ranking() {
    Outcome o;
    // CIFAR10 rows: BigGAN IS 9.96 FID 4.16, StyleGAN2 IS 10.17 FID 3.78.
    const std::vector<MetricReport> pair{ranked_report("BigGAN", 9.96, 4.16), ranked_report("StyleGAN2", 10.17, 3.78)};
    const auto t = rank_models(pair);
    const auto& top = t.rows.front();
    o.require(top.model_name == "StyleGAN2" && top.ranks.at("FID") == 1 && rank_mark(top.ranks.at("FID")) == "Top-1",
              "StyleGAN2 not Top-1 on FID");
    o.require(t.rows.back().ranks.at("FID") == 2 && rank_mark(2) == "Top-2", "BigGAN not Top-2 on FID");

    auto grid_report = [](const std::string& name, double fid, double precision) {
        auto r = ranked_report(name, 1.0, fid);
        r.entries.erase("IS");
        r.set(BackboneRegistry::builtin().find("InceptionV3"), MetricKind::Precision, precision);
        return r;
    };
    // Per-metric ranks (1,2), (2,1), (3,3).
    const std::vector<MetricReport> grid{grid_report("A", 1.0, 0.5), grid_report("B", 2.0, 0.9),
                                         grid_report("C", 3.0, 0.1)};
    const auto g = rank_models(grid);
    std::map<std::string, double> avg;
    for (const auto& row : g.rows) avg[row.model_name] = row.average_rank;
    o.require(avg["A"] == 1.5 && avg["B"] == 1.5 && avg["C"] == 3.0, "grid averages wrong");
    if (o.pass) o.detail = "StyleGAN2 Top-1 (3.78 < 4.16); grid averages 1.5, 1.5, 3.0";
    return o;
}

}  // namespace

int main() {
    std::printf("genmetrics acceptance suite\n");
    criterion("FD closed form and oracle", 1.0, frechet_closed_form);
    criterion("FD self-distance N=5000 D=2048", 60.0, frechet_self_distance);
    criterion("PRDC oracle equivalence", 120.0, prdc_oracle);
    criterion("PRDC hand case", 0.0, prdc_hand_case);
    criterion("Classifier score bounds", 0.0, classifier_score_cases);
    criterion("Quantization bit-exactness", 0.0, quantization);
    criterion("Resampler goldens", 0.0, resampler_goldens);
    criterion("Efficiency curves", 120.0, efficiency_curves);
    criterion("End-to-end CLI", 0.0, end_to_end);
    criterion("Ranking conventions", 0.0, ranking);
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
