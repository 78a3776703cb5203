#include "dshlab/json_io.hpp"

#include "dshlab/errors.hpp"

namespace dshlab {

namespace {

PointRef parse_key(const std::string& key) {
  const auto slash = key.find('/');
  if (slash == std::string::npos) throw PreconditionError("element key '" + key + "' lacks '/'");
  try {
    return {std::stoi(key.substr(0, slash)), key.substr(slash + 1)};
  } catch (const std::logic_error&) {
    throw PreconditionError("element key '" + key + "' has a malformed level");
  }
}

template <class Fn>
auto wrap_parse(Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n", a.dim()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  return wrap_parse([&] {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("entries");
    if (n < 1 || rows.size() != static_cast<std::size_t>(n)) {
      throw PreconditionError("matrix JSON row count does not match n");
    }
    DenseMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (row.size() != static_cast<std::size_t>(n)) {
        throw PreconditionError("matrix JSON row " + std::to_string(r) + " has wrong length");
      }
      for (int c = 0; c < n; ++c) {
        const auto& z = row.at(static_cast<std::size_t>(c));
        a(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return ComplexMatrix(std::move(a));
  });
}

Json model_to_json(const FiniteDshModel& m) {
  Json levels = Json::array();
  for (const auto& l : m.levels()) {
    Json points = Json::array();
    for (const auto& p : l.points) {
      Json gluing = Json::array();
      for (const auto& q : p.gluing) gluing.push_back({{"level", q.level}, {"point", q.point}});
      points.push_back({{"id", p.id}, {"glued", p.glued}, {"gluing", std::move(gluing)}});
    }
    levels.push_back({{"dim", l.dim}, {"points", std::move(points)}});
  }
  return {{"levels", std::move(levels)}};
}

FiniteDshModel model_from_json(const Json& j) {
  return wrap_parse([&] {
    std::vector<Level> levels;
    for (const auto& l : j.at("levels")) {
      Level level{l.at("dim").get<int>(), {}};
      for (const auto& p : l.at("points")) {
        PointSpec spec{p.at("id").get<std::string>(), p.value("glued", false), {}};
        if (p.contains("gluing")) {
          for (const auto& q : p.at("gluing")) {
            spec.gluing.push_back({q.at("level").get<int>(), q.at("point").get<std::string>()});
          }
        }
        level.points.push_back(std::move(spec));
      }
      levels.push_back(std::move(level));
    }
    return FiniteDshModel(std::move(levels));
  });
}

Json element_to_json(const Element& e) {
  Json out = Json::object();
  for (const auto& [p, a] : e.values()) out[to_string(p)] = matrix_to_json(a);
  return out;
}

Element element_from_json(const Json& j, ModelPtr model) {
  return wrap_parse([&] {
    std::map<PointRef, ComplexMatrix> values;
    for (const auto& [key, value] : j.items()) values.emplace(parse_key(key), matrix_from_json(value));
    return Element(std::move(model), std::move(values));
  });
}

Json substitution_to_json(const Substitution& s) {
  Json alphabet = Json::array();
  for (char c : s.alphabet()) alphabet.push_back(std::string(1, c));
  Json rules = Json::object();
  for (const auto& [c, w] : s.rules()) rules[std::string(1, c)] = w;
  return {{"alphabet", std::move(alphabet)}, {"rules", std::move(rules)}, {"seed", std::string(1, s.seed())}};
}

Substitution substitution_from_json(const Json& j) {
  return wrap_parse([&] {
    auto symbol = [](const std::string& s) {
      if (s.size() != 1) throw PreconditionError("symbol '" + s + "' is not a single character");
      return s.front();
    };
    std::vector<char> alphabet;
    for (const auto& a : j.at("alphabet")) alphabet.push_back(symbol(a.get<std::string>()));
    std::map<char, std::string> rules;
    for (const auto& [k, v] : j.at("rules").items()) rules[symbol(k)] = v.get<std::string>();
    std::optional<char> seed;
    if (j.contains("seed")) seed = symbol(j.at("seed").get<std::string>());
    return Substitution(std::move(alphabet), std::move(rules), seed);
  });
}

Json tower_to_json(const TowerModel& t) {
  Json out = model_to_json(*t.model);
  out["dynamics"] = {{"base", t.base}, {"return_words", t.return_words}, {"horizon", t.horizon}};
  return out;
}

Json return_words_to_json(const ReturnWords& rw) {
  return {{"base", rw.base},
          {"words", rw.words},
          {"return_times", rw.return_times()},
          {"stabilization",
           {{"scan_lengths", {rw.scan_length, 2 * rw.scan_length}}, {"occurrences", rw.occurrences}}}};
}

Json certificate_to_json(const PipelineCertificate& c, bool include_timing) {
  Json stages = Json::array();
  for (const auto& s : c.stages) {
    Json preds = Json::object();
    for (const auto& [name, r] : s.predicates) {
      Json entry = {{"pass", r.pass}};
      if (!r.pass) entry["witness"] = r.witness;
      preds[name] = std::move(entry);
    }
    stages.push_back({{"name", s.name},
                      {"unitary_ids", s.unitary_ids},
                      {"distance", s.distance},
                      {"predicates", std::move(preds)}});
  }
  Json summary = {{"epsilon", c.epsilon},
                  {"total_distance", c.total_distance},
                  {"stage_distance_sum", c.stage_distance_sum},
                  {"min_singular_value", c.min_singular_value},
                  {"passes", c.passes()}};
  if (include_timing) summary["runtime_ms"] = c.runtime_ms;
  return {{"input", c.input_id},
          {"parameters",
           {{"model_in", c.model_in}, {"model_out", c.model_out}, {"R", c.r}, {"M", c.m}, {"N", c.n},
            {"delta", c.delta}}},
          {"stages", std::move(stages)},
          {"summary", std::move(summary)}};
}

}  // namespace dshlab
