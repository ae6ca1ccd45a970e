#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "restartive/problems.hpp"

namespace restartive {

namespace detail {

inline uint32_t read_be_u32(std::ifstream& in, const std::string& path,
                            std::size_t offset) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (in.gcount() != 4)
        throw std::runtime_error("mnist: " + path + ": truncated header at byte "
                                 + std::to_string(offset));
    return (static_cast<uint32_t>(buf[0]) << 24) | (static_cast<uint32_t>(buf[1]) << 16)
           | (static_cast<uint32_t>(buf[2]) << 8) | static_cast<uint32_t>(buf[3]);
}

} // namespace detail

// Reads the classic IDX pair (idx3 images, idx1 labels), scales pixels to
// [0, 1], and reports any malformed byte with its offset.
inline LogisticRegression load_mnist_idx(const std::string& images_path,
                                         const std::string& labels_path,
                                         double lambda = 0.0) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("mnist: cannot open " + images_path);
    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("mnist: cannot open " + labels_path);

    const uint32_t img_magic = detail::read_be_u32(img, images_path, 0);
    if (img_magic != 0x00000803u)
        throw std::runtime_error("mnist: " + images_path + ": bad magic "
                                 + std::to_string(img_magic) + " at byte 0");
    const uint32_t n_img = detail::read_be_u32(img, images_path, 4);
    const uint32_t rows = detail::read_be_u32(img, images_path, 8);
    const uint32_t cols = detail::read_be_u32(img, images_path, 12);
    if (rows != 28 || cols != 28)
        throw std::runtime_error("mnist: " + images_path + ": expected 28x28 images, got "
                                 + std::to_string(rows) + "x" + std::to_string(cols)
                                 + " at byte 8");

    const uint32_t lab_magic = detail::read_be_u32(lab, labels_path, 0);
    if (lab_magic != 0x00000801u)
        throw std::runtime_error("mnist: " + labels_path + ": bad magic "
                                 + std::to_string(lab_magic) + " at byte 0");
    const uint32_t n_lab = detail::read_be_u32(lab, labels_path, 4);
    if (n_img != n_lab)
        throw std::runtime_error("mnist: image count " + std::to_string(n_img)
                                 + " does not match label count " + std::to_string(n_lab));

    LogisticRegression lr;
    lr.n = static_cast<long>(n_img);
    lr.p = 784;
    lr.C = 10;
    lr.lambda = lambda;
    lr.X.resize(static_cast<std::size_t>(lr.n) * 784u);
    lr.y.resize(static_cast<std::size_t>(lr.n));

    std::vector<unsigned char> pix(static_cast<std::size_t>(lr.n) * 784u);
    img.read(reinterpret_cast<char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
    if (img.gcount() != static_cast<std::streamsize>(pix.size()))
        throw std::runtime_error("mnist: " + images_path + ": truncated payload at byte "
                                 + std::to_string(16 + img.gcount()));
    for (std::size_t i = 0; i < pix.size(); ++i)
        lr.X[i] = static_cast<double>(pix[i]) / 255.0;

    std::vector<unsigned char> raw(static_cast<std::size_t>(lr.n));
    lab.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (lab.gcount() != static_cast<std::streamsize>(raw.size()))
        throw std::runtime_error("mnist: " + labels_path + ": truncated payload at byte "
                                 + std::to_string(8 + lab.gcount()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] > 9)
            throw std::runtime_error("mnist: " + labels_path + ": label "
                                     + std::to_string(static_cast<int>(raw[i]))
                                     + " out of range at byte " + std::to_string(8 + i));
        lr.y[i] = static_cast<int>(raw[i]);
    }
    return lr;
}

} // namespace restartive
