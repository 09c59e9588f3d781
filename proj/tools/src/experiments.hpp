#pragma once
// Internal: one entry per experiment kind.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "anderson_lab/config.hpp"
#include "anderson_lab/record.hpp"

namespace anderson::lab::detail {

struct Context {
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct Prepared {
    std::uint64_t trials = 0;
    std::function<std::vector<Record>(const Context&)> run;
};

using Preparer = std::function<Prepared(Reader&, std::size_t d)>;

const std::map<std::string, Preparer>& registry();

}  // namespace anderson::lab::detail
