#include "qwalk/model.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "qwalk/parse.hpp"

namespace qwalk {

namespace {

void validate_weight(const Poly& w) {
    if (w.is_zero()) fail(Err::BadInput, "zero step weight");
    for (const auto& [e, c] : w.terms()) {
        if (e[static_cast<int>(Var::t)] || e[static_cast<int>(Var::x)] ||
            e[static_cast<int>(Var::y)] || e[static_cast<int>(Var::u)])
            fail(Err::BadInput, "step weight may only involve lam");
        if (sgn(c) <= 0) fail(Err::BadInput, "step weights must be positive");
    }
}

}

bool StepModel::has_symbolic_weights() const {
    for (const auto& [s, w] : steps)
        if (w.contains(Var::lam)) return true;
    return false;
}

std::string StepModel::canonical_key() const {
    std::string k;
    for (const auto& [s, w] : steps) {
        k += "(" + std::to_string(s.first) + "," + std::to_string(s.second) + "):";
        k += w.str();
        k += ";";
    }
    return k;
}

StepModel make_model(const std::string& name,
                     const std::vector<std::tuple<int, int, Poly>>& steps) {
    if (steps.empty()) fail(Err::BadInput, "model needs at least one step");
    StepModel m;
    m.name = name;
    for (const auto& [i, j, w] : steps) {
        if (i < -1 || i > 1 || j < -1 || j > 1 || (i == 0 && j == 0))
            fail(Err::BadInput, "step outside small-step range");
        validate_weight(w);
        if (!m.steps.emplace(std::make_pair(i, j), w).second)
            fail(Err::BadInput, "duplicate step");
    }
    return m;
}

Kernel build_kernel(const StepModel& m) {
    Kernel k;
    Poly sum;
    for (const auto& [s, w] : m.steps) {
        Exps e{};
        e[static_cast<int>(Var::x)] = static_cast<int16_t>(s.first + 1);
        e[static_cast<int>(Var::y)] = static_cast<int16_t>(s.second + 1);
        sum += Poly::mono(e, Rat(1)) * w;
    }
    k.K = Poly::var(Var::t) * sum - Poly::var(Var::x) * Poly::var(Var::y);
    k.a = k.K.coeff_of(Var::y, 2);
    k.b = k.K.coeff_of(Var::y, 1);
    k.c = k.K.coeff_of(Var::y, 0);
    k.at = k.K.coeff_of(Var::x, 2);
    k.bt = k.K.coeff_of(Var::x, 1);
    k.ct = k.K.coeff_of(Var::x, 0);
    Poly y = Poly::var(Var::y), x = Poly::var(Var::x);
    if (k.K != k.a * y * y + k.b * y + k.c || k.K != k.at * x * x + k.bt * x + k.ct)
        fail(Err::Internal, "kernel decomposition mismatch");
    k.d = k.b * k.b - Rat(4) * (k.a * k.c);
    k.dt = k.bt * k.bt - Rat(4) * (k.at * k.ct);
    return k;
}

bool is_singular(const StepModel& m) {
    for (const auto& [s, w] : m.steps)
        if (s.first + s.second < 0) return false;
    return true;
}

bool is_vertically_symmetric(const StepModel& m) {
    for (const auto& [s, w] : m.steps) {
        auto it = m.steps.find({-s.first, s.second});
        if (it == m.steps.end() || it->second != w) return false;
    }
    return true;
}

StepModel diagonal_reflection(const StepModel& m) {
    StepModel r;
    r.name = m.name + "-diag";
    for (const auto& [s, w] : m.steps) r.steps[{s.second, s.first}] = w;
    return r;
}

StepModel vertical_reflection(const StepModel& m) {
    StepModel r;
    r.name = m.name + "-vref";
    for (const auto& [s, w] : m.steps) r.steps[{-s.first, s.second}] = w;
    return r;
}

namespace {

StepModel unweighted(const std::string& name, const std::vector<std::pair<int, int>>& steps) {
    std::vector<std::tuple<int, int, Poly>> v;
    for (auto [i, j] : steps) v.emplace_back(i, j, Poly(1));
    return make_model(name, v);
}

std::vector<StepModel> vsym_models() {
    // vertically symmetric sets with horizontal, up and down movement,
    // one representative per diagonal-reflection class
    std::vector<StepModel> out;
    std::set<std::string> seen;
    for (int mask = 0; mask < 32; ++mask) {
        bool ne = mask & 1, e = mask & 2, se = mask & 4, n = mask & 8, s = mask & 16;
        if (!(ne || e || se)) continue;        // no horizontal movement
        if (!(ne || n)) continue;              // no up step
        if (!(se || s)) continue;              // no down step
        std::vector<std::pair<int, int>> steps;
        if (ne) { steps.push_back({1, 1}); steps.push_back({-1, 1}); }
        if (e) { steps.push_back({1, 0}); steps.push_back({-1, 0}); }
        if (se) { steps.push_back({1, -1}); steps.push_back({-1, -1}); }
        if (n) steps.push_back({0, 1});
        if (s) steps.push_back({0, -1});
        StepModel m = unweighted("", steps);
        StepModel d = diagonal_reflection(m);
        std::string key = m.canonical_key();
        if (is_vertically_symmetric(d)) key = std::min(key, d.canonical_key());
        if (!seen.insert(key).second) continue;
        out.push_back(m);
    }
    if (out.size() != 16) fail(Err::Internal, "vertically symmetric family miscount");
    for (size_t i = 0; i < out.size(); ++i) out[i].name = "vsym-" + std::to_string(i + 1);
    return out;
}

}

std::vector<StepModel> catalog() {
    std::vector<StepModel> v;
    v.push_back(unweighted("kreweras", {{1, 1}, {-1, 0}, {0, -1}}));
    v.push_back(unweighted("reversed-kreweras", {{-1, -1}, {1, 0}, {0, 1}}));
    v.push_back(unweighted("double-kreweras",
                           {{1, 1}, {-1, 0}, {0, -1}, {-1, -1}, {1, 0}, {0, 1}}));
    v.push_back(unweighted("gessel", {{1, 0}, {1, 1}, {-1, 0}, {-1, -1}}));
    v.push_back(unweighted("simple", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));

    Poly one(1), two(2), lam = Poly::var(Var::lam);
    v.push_back(make_model("weighted-1",
                           {{-1, 0, one}, {-1, -1, one}, {0, -1, lam}, {1, -1, one},
                            {1, 0, two}, {1, 1, one}}));
    v.push_back(make_model("weighted-2",
                           {{-1, 0, one}, {-1, 1, one}, {0, 1, two}, {1, 1, one},
                            {1, 0, two}, {1, -1, one}, {0, -1, one}}));
    v.push_back(make_model("weighted-3",
                           {{-1, 0, two}, {-1, 1, one}, {0, 1, one}, {-1, -1, one},
                            {1, 0, one}, {1, -1, one}, {0, -1, two}}));
    v.push_back(make_model("weighted-4",
                           {{-1, 0, two}, {-1, 1, one}, {0, 1, two}, {1, 1, one},
                            {1, 0, one}, {0, -1, one}, {-1, -1, one}}));

    v.push_back(unweighted("#1", {{0, 1}, {1, 0}, {-1, 0}, {-1, -1}}));
    v.push_back(unweighted("#2", {{0, 1}, {1, 0}, {-1, 1}, {-1, -1}}));
    v.push_back(unweighted("#3", {{0, 1}, {1, 1}, {0, -1}, {-1, 0}}));
    v.push_back(unweighted("#4", {{0, 1}, {1, 0}, {1, -1}, {-1, 0}}));
    v.push_back(unweighted("#5", {{0, 1}, {1, 0}, {1, 1}, {-1, -1}, {-1, 0}}));
    v.push_back(unweighted("#6", {{0, 1}, {0, -1}, {1, 1}, {-1, -1}, {-1, 0}}));
    v.push_back(unweighted("#7", {{-1, 1}, {-1, 0}, {1, 0}, {-1, -1}, {0, 1}}));
    v.push_back(unweighted("#8", {{1, 1}, {0, -1}, {1, 0}, {-1, 0}, {0, 1}}));
    v.push_back(unweighted("#9", {{1, 0}, {0, -1}, {0, 1}, {-1, 1}, {1, -1}}));

    v.push_back(unweighted("table3-1", {{1, -1}, {-1, 0}, {0, 1}}));
    v.push_back(unweighted("table3-4",
                           {{1, -1}, {-1, 1}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}));
    v.push_back(unweighted("table3-6", {{-1, 1}, {1, -1}, {-1, 0}, {1, 0}}));

    v.push_back(unweighted("candidate-1", {{-1, 0}, {0, 1}, {1, -1}, {1, 0}, {0, -1}}));
    v.push_back(unweighted("candidate-2", {{-1, 0}, {0, 1}, {-1, -1}, {1, 0}, {0, -1}}));
    v.push_back(unweighted("candidate-3", {{-1, 1}, {0, 1}, {-1, -1}, {1, 0}, {1, -1}}));
    v.push_back(unweighted("candidate-4",
                           {{-1, 0}, {-1, 1}, {0, 1}, {-1, -1}, {1, 0}, {1, -1}}));
    v.push_back(unweighted("candidate-5",
                           {{-1, 0}, {-1, 1}, {0, 1}, {-1, -1}, {1, 0}, {1, -1}, {0, -1}}));
    v.push_back(unweighted("candidate-6", {{0, 1}, {-1, -1}, {1, 0}, {1, 1}}));

    for (auto& m : vsym_models()) v.push_back(std::move(m));
    return v;
}

std::optional<StepModel> catalog_lookup(const std::string& name) {
    for (auto& m : catalog())
        if (m.name == name) return m;
    return std::nullopt;
}

std::vector<StepModel> all_step_sets() {
    static const std::pair<int, int> order[8] = {
        {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};
    std::vector<StepModel> out;
    out.reserve(255);
    for (int mask = 1; mask < 256; ++mask) {
        std::vector<std::pair<int, int>> steps;
        for (int b = 0; b < 8; ++b)
            if (mask & (1 << b)) steps.push_back(order[b]);
        out.push_back(unweighted("set-" + std::to_string(mask), steps));
    }
    return out;
}

StepModel load_model_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::BadInput, std::string("model file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j.contains("steps"))
        fail(Err::BadInput, "model file needs name and steps fields");
    std::vector<std::tuple<int, int, Poly>> steps;
    for (const auto& s : j["steps"]) {
        if (!s.is_array() || s.size() != 3)
            fail(Err::BadInput, "each step must be [i, j, weight]");
        int i = s[0].get<int>();
        int jj = s[1].get<int>();
        std::string w = s[2].is_string() ? s[2].get<std::string>() : s[2].dump();
        RatFunc wf = parse_ratfunc(w);
        if (!wf.is_polynomial()) fail(Err::BadInput, "step weight must be polynomial");
        steps.emplace_back(i, jj, wf.as_polynomial());
    }
    return make_model(j["name"].get<std::string>(), steps);
}

}
