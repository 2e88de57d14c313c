#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betaweight/rng.hpp"
#include "betaweight/tensor.hpp"

namespace bw {

// Images stored as flat [0,1] doubles; labels and domain tags are optional
// (empty vector = absent). Immutable after construction by convention.
struct ImageSet {
    std::size_t count = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> pixels;
    std::vector<int> labels;
    std::vector<int> domain_tags;

    std::size_t image_size() const { return height * width; }
    const double* image(std::size_t i) const { return pixels.data() + i * image_size(); }
    double* image_mut(std::size_t i) { return pixels.data() + i * image_size(); }
    bool has_labels() const { return !labels.empty(); }
    bool has_tags() const { return !domain_tags.empty(); }

    void validate() const;
};

// ---- IDX files ---------------------------------------------------------
// Big-endian magic (0x00000803 images, 0x00000801 labels), big-endian
// 32-bit extents, raw unsigned bytes. Pixels scale to [0,1] by /255.

ImageSet load_idx_images(const std::string& path);
std::vector<int> load_idx_labels(const std::string& path);
void save_idx_images(const std::string& path, const ImageSet& set);
void save_idx_labels(const std::string& path, std::span<const int> labels);

// ---- mixed-domain split construction ------------------------------------

struct Domain {
    std::string name;
    ImageSet train;
    ImageSet test;
};

struct SplitSpec {
    std::string target_domain;
    std::size_t target_train_size = 2000;
    std::size_t target_test_size = 2000;
    std::size_t source_cap_per_domain = 6000;
    std::uint64_t seed = 0;
};

struct MixedSplit {
    ImageSet source;        // leftover target-domain images + other domains, tagged
    ImageSet target_train;  // labelled when the domain is labelled
    ImageSet target_test;
    std::array<std::string, 3> domain_names;
    int target_tag = 0;
};

// Target test from the designated test pool, target train sampled from the
// target training pool, source = leftover target training images plus the
// other two training pools, each capped per spec. Outputs pairwise disjoint.
MixedSplit build_mixed_source(const std::array<Domain, 3>& domains,
                              const SplitSpec& spec, RandomStream& rng);

// Three visually separable synthetic 28x28 families (horizontal bars on dark
// ground / dark discs on bright ground / dot textures on gray), 10 classes
// each, with train and test pools. Stands in for the MNIST-family trio when
// no IDX data is on disk.
std::array<Domain, 3> synth_domains(RandomStream& rng, std::size_t n_train,
                                    std::size_t n_test);

// ---- exact right-angle rotation ------------------------------------------

// r x 90 degrees counter-clockwise by index remapping; square images only.
void rotate_image(const double* in, double* out, std::size_t side, int r);
Tensor rotate_image(const Tensor& img, int r);

}  // namespace bw
