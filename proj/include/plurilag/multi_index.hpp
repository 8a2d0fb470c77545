#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "plurilag/errors.hpp"

namespace plurilag::lattice {

// A vertex of Z^m. Direction (axis) indices are 1-based throughout the
// library, matching the file formats.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> coords) : c_(std::move(coords)) {}

    static MultiIndex zero(int m) { return MultiIndex(std::vector<int>(static_cast<size_t>(m), 0)); }

    int dim() const { return static_cast<int>(c_.size()); }

    int at(int dir) const {
        check_dir(dir);
        return c_[static_cast<size_t>(dir - 1)];
    }

    MultiIndex shifted(int dir, int by = 1) const {
        check_dir(dir);
        MultiIndex out(*this);
        out.c_[static_cast<size_t>(dir - 1)] += by;
        return out;
    }

    const std::vector<int>& coords() const { return c_; }

    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        s += ")";
        return s;
    }

private:
    void check_dir(int dir) const {
        if (dir < 1 || dir > dim())
            throw CellError("direction " + std::to_string(dir) + " out of range for Z^" +
                            std::to_string(dim()));
    }

    std::vector<int> c_;
};

struct MultiIndexHash {
    size_t operator()(const MultiIndex& v) const {
        // FNV-1a over the coordinates
        uint64_t h = 1469598103934665603ull;
        for (int c : v.coords()) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(c));
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace plurilag::lattice
