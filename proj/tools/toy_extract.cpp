// Deterministic stand-in for a pretrained backbone: maps each prepared PNG to
// a pooled colour descriptor and, optionally, a softmax head. Lets the CLI be
// exercised end to end without a deep-learning runtime.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genmetrics/error.hpp"
#include "genmetrics/gmf1.hpp"
#include "genmetrics/image_codec.hpp"
#include "genmetrics/resample.hpp"

namespace fs = std::filesystem;
using namespace genmetrics;

namespace {

constexpr int kGrid = 4;

// Bilinear pooling to a kGrid x kGrid RGB thumbnail, scaled to [0, 1].
std::vector<float> descriptor(const PixelBuffer& image) {
    PixelBuffer rgb = image;
    if (image.channels() == 1) {
        std::vector<std::uint8_t> v;
        v.reserve(image.size() * 3);
        for (auto px : image.u8()) v.insert(v.end(), 3, px);
        rgb = PixelBuffer::from_u8(image.width(), image.height(), 3, std::move(v));
    }
    const PixelBuffer small = resize(rgb, kGrid, kGrid, FilterKind::Bilinear, true);
    std::vector<float> out;
    for (auto px : small.u8()) out.push_back(static_cast<float>(px) / 255.0f);
    return out;
}

// Softmax of a fixed cosine projection; the class with the largest logit is
// the row's label.
std::vector<float> head(const std::vector<float>& feature, int classes, ClassId& label) {
    std::vector<double> logits(classes, 0.0);
    for (int c = 0; c < classes; ++c)
        for (std::size_t d = 0; d < feature.size(); ++d)
            logits[c] += 4.0 * feature[d] * std::cos(0.7 * (c + 1) * (d + 1));
    label = static_cast<ClassId>(std::max_element(logits.begin(), logits.end()) - logits.begin());
    const double peak = logits[label];
    double total = 0.0;
    for (auto& l : logits) total += (l = std::exp(l - peak));
    std::vector<float> p;
    for (auto l : logits) p.push_back(static_cast<float>(l / total));
    // Renormalize in float so rows sum to 1 at storage precision.
    float sum = 0.0f;
    for (auto v : p) sum += v;
    for (auto& v : p) v /= sum;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toy feature extractor writing GMF1"};
    fs::path images, output;
    int classes = 0;
    bool labels = false;
    app.add_option("--images", images, "Directory of prepared PNGs")->required();
    app.add_option("--out", output, "GMF1 output path")->required();
    app.add_option("--classes", classes, "Attach a softmax head with this many classes")->check(CLI::Range(0, 1000));
    app.add_flag("--labels", labels, "Store the head's argmax as the class label");
    CLI11_PARSE(app, argc, argv);
    if (labels && classes < 2) {
        std::cerr << "--labels needs --classes >= 2\n";
        return 2;
    }

    try {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(images))
            if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw Error(ErrorCode::PreconditionViolation, "no PNG files in " + images.string());

        std::vector<float> features, posteriors;
        std::vector<ClassId> ids;
        std::size_t dim = 0;
        for (const auto& f : files) {
            const auto d = descriptor(load_image(f));
            dim = d.size();
            features.insert(features.end(), d.begin(), d.end());
            if (classes > 0) {
                ClassId id = 0;
                const auto p = head(d, classes, id);
                posteriors.insert(posteriors.end(), p.begin(), p.end());
                ids.push_back(id);
            }
        }
        const std::size_t n = files.size();
        std::optional<std::vector<ClassId>> label_opt;
        std::optional<std::uint32_t> class_count;
        if (labels) {
            label_opt = ids;
            class_count = static_cast<std::uint32_t>(classes);
        }
        FeatureSet fs_out(n, dim, std::move(features), label_opt, class_count);
        std::optional<PosteriorSet> post;
        if (classes > 0) post = PosteriorSet(n, static_cast<std::size_t>(classes), std::move(posteriors));
        write_features(output, fs_out, post);
        std::cout << "wrote " << n << " x " << dim << " features to " << output.string() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
