#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "histarith/errors.hpp"

namespace histarith {

// Observations stored sorted ascending (canonical form). Duplicates allowed.
class Sample {
public:
    static Sample from_values(std::vector<double> values) {
        if (values.empty())
            throw data_error("sample is empty");
        for (double v : values)
            if (!std::isfinite(v))
                throw data_error("sample contains a non-finite value");
        std::sort(values.begin(), values.end());
        return Sample(std::move(values));
    }

    const std::vector<double>& values() const { return values_; }
    std::size_t n() const { return values_.size(); }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

private:
    explicit Sample(std::vector<double> sorted) : values_(std::move(sorted)) {}
    std::vector<double> values_;
};

} // namespace histarith
