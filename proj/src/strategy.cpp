/*
Copyright 2026 The fmcodec Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "fmc/strategy.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fmc {

int StageStrategy::split_stage() const {
    for (size_t i = 0; i < stages.size(); ++i) {
        if (stages[i].method == Method::ZvcOnly || stages[i].method == Method::AspZvc) {
            return int(i);
        }
    }
    return -1;
}

StageStrategy StageStrategy::split(int n_stages, int split, int early_bits, int late_bits) {
    if (n_stages < 1 || split < 0 || split > n_stages) {
        throw std::invalid_argument("strategy: split point outside 0..n_stages");
    }
    StageStrategy s;
    s.stages.reserve(size_t(n_stages));
    for (int i = 0; i < n_stages; ++i) {
        const int bits = i < split ? early_bits : late_bits;
        const char* name = i < split ? "dct-2d" : "lowbit";
        s.stages.push_back(MethodSpec::parse(std::string(name) + "(" + std::to_string(bits) +
                                             ")"));
    }
    return s;
}

StageStrategy StageStrategy::parse_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<std::pair<int, MethodSpec>> entries;
    int max_stage = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        std::string stage_tok, spec_tok, extra;
        if (!(ss >> stage_tok)) continue; // blank or comment-only line
        if (!(ss >> spec_tok) || (ss >> extra)) {
            throw std::invalid_argument("strategy: line " + std::to_string(lineno) +
                                        " is not 'stage method-spec'");
        }
        int stage = -1;
        const auto [ptr, ec] =
            std::from_chars(stage_tok.data(), stage_tok.data() + stage_tok.size(), stage);
        if (ec != std::errc() || ptr != stage_tok.data() + stage_tok.size() || stage < 0 ||
            stage > 255) {
            throw std::invalid_argument("strategy: bad stage '" + stage_tok + "' on line " +
                                        std::to_string(lineno));
        }
        entries.emplace_back(stage, MethodSpec::parse(spec_tok));
        max_stage = std::max(max_stage, stage);
    }
    if (entries.empty()) {
        throw std::invalid_argument("strategy: " + path.string() + " defines no stages");
    }

    StageStrategy s;
    s.stages.resize(size_t(max_stage) + 1);
    std::vector<bool> seen(size_t(max_stage) + 1, false);
    for (auto& [stage, spec] : entries) {
        if (seen[size_t(stage)]) {
            throw std::invalid_argument("strategy: stage " + std::to_string(stage) +
                                        " defined twice");
        }
        seen[size_t(stage)] = true;
        s.stages[size_t(stage)] = std::move(spec);
    }
    for (size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw std::invalid_argument("strategy: stage " + std::to_string(i) +
                                        " has no method");
        }
    }
    return s;
}

std::vector<CompressedActivation> strategy_compress(
    const std::vector<std::pair<int, Tensor>>& stages,
    const StageStrategy& s,
    const std::optional<MaskSchedule>& mask) {
    std::vector<CompressedActivation> out;
    out.reserve(stages.size());
    for (const auto& [stage, x] : stages) {
        if (stage < 0 || size_t(stage) >= s.stages.size()) {
            throw std::invalid_argument("strategy: no method for stage " +
                                        std::to_string(stage));
        }
        MethodSpec spec = s.stages[size_t(stage)];
        if (spec.method == Method::DctCm && !spec.mask) {
            spec.mask = mask ? *mask : MaskSchedule::m1();
        }
        out.push_back(compress(x, spec, stage));
    }
    return out;
}

} // namespace fmc
