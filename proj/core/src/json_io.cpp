#include "latkit/json_io.hpp"

#include "latkit/linalg.hpp"

#include <fstream>
#include <limits>

namespace latkit {

namespace {

json int_to_json(const Int& n) {
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
    return json(n.convert_to<long long>());
  return json(n.str());
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw DomainError("rational must be an integer or a \"p/q\" string");
}

json rat_to_json(const Rat& q) {
  // Small integers render as JSON numbers, everything else as strings.
  if (is_integer(q)) return int_to_json(num(q));
  return json(rat_str(q));
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty array of rows");
  std::size_t rows = j.size(), cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw DomainError("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(j[i][k]);
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Lattice lattice_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("lattice JSON must be an object");
  const bool has_gram = j.contains("gram"), has_basis = j.contains("basis");
  if (!has_gram && !has_basis) throw DomainError("lattice needs a gram or a basis");
  if (has_basis) {
    Lattice l{matrix_from_json(j["basis"])};
    if (has_gram && l.gram() != matrix_from_json(j["gram"]))
      throw DomainError("gram does not match the basis inner products");
    return l;
  }
  return Lattice::from_gram(matrix_from_json(j["gram"]));
}

json lattice_to_json(const Lattice& l, const std::string& name) {
  json j;
  if (!name.empty()) j["name"] = name;
  j["gram"] = matrix_to_json(l.gram());
  if (l.metric() == Mat::identity(l.ambient_dim())) j["basis"] = matrix_to_json(l.basis());
  return j;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open \"" + path + "\"");
  json j;
  in >> j;
  return j;
}

}  // namespace

Lattice load_lattice_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return lattice_from_json(json::parse(arg));
  if (arg.find('.') != std::string::npos || arg.find('/') != std::string::npos) {
    std::ifstream probe(arg);
    if (probe) return lattice_from_json(read_json_file(arg));
  }
  return lattice_from_name(arg);
}

IsometrySpec isometry_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw DomainError("isometry spec needs a kind");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return IsometrySpec::identity_spec();
  if (kind == "negation_of_all") return IsometrySpec::negation();
  if (kind == "perm") {
    std::vector<std::vector<int>> cycles;
    for (const auto& c : j.at("cycles")) cycles.push_back(c.get<std::vector<int>>());
    return IsometrySpec::perm(std::move(cycles));
  }
  if (kind == "signed") {
    std::vector<int> images;
    for (const auto& e : j.at("images")) {
      if (e.is_array()) {
        if (e.size() != 1) throw DomainError("signed image entries are single indices");
        images.push_back(e[0].get<int>());
      } else {
        images.push_back(e.get<int>());
      }
    }
    return IsometrySpec::signed_map(std::move(images));
  }
  if (kind == "root_reflection") {
    std::vector<Rat> root;
    for (const auto& e : j.at("root")) root.push_back(rat_from_json(e));
    return IsometrySpec::reflection(std::move(root));
  }
  if (kind == "matrix") return IsometrySpec::ambient_matrix(matrix_from_json(j.at("rows")));
  if (kind == "negated")
    return IsometrySpec::negated_spec(isometry_spec_from_json(j.at("inner")));
  throw DomainError("unknown isometry kind \"" + kind + "\"");
}

json isometry_spec_to_json(const IsometrySpec& s) {
  using Kind = IsometrySpec::Kind;
  json j;
  switch (s.kind) {
    case Kind::identity:
      j["kind"] = "identity";
      break;
    case Kind::negation_of_all:
      j["kind"] = "negation_of_all";
      break;
    case Kind::coordinate_permutation:
      j["kind"] = "perm";
      j["cycles"] = s.cycles;
      break;
    case Kind::signed_coordinate_map: {
      j["kind"] = "signed";
      json imgs = json::array();
      for (int v : s.signed_images) imgs.push_back(json::array({v}));
      j["images"] = std::move(imgs);
      break;
    }
    case Kind::reflection_at_root: {
      j["kind"] = "root_reflection";
      json root = json::array();
      for (const auto& q : s.root) root.push_back(rat_to_json(q));
      j["root"] = std::move(root);
      break;
    }
    case Kind::explicit_matrix:
      j["kind"] = "matrix";
      j["rows"] = matrix_to_json(s.matrix);
      break;
    case Kind::negated:
      j["kind"] = "negated";
      j["inner"] = isometry_spec_to_json(*s.inner);
      break;
  }
  return j;
}

IsometrySpec load_isometry_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return isometry_spec_from_json(json::parse(arg));
  return isometry_spec_from_json(read_json_file(arg));
}

json pair_sum_to_json(const PairSumResult& r) {
  json j;
  j["gram"] = matrix_to_json(r.K.gram());
  j["rank"] = r.K.rank();
  j["det"] = rat_to_json(r.K.determinant());
  json smith = json::array();
  for (const auto& d : smith_normal_form(r.K.gram()).invariants) smith.push_back(int_to_json(d));
  j["smith"] = std::move(smith);
  j["even"] = r.K.is_even();
  if (r.index_in_ambient) j["index_in_ambient"] = int_to_json(*r.index_in_ambient);
  return j;
}

json identification_to_json(const Identification& id) {
  json j;
  switch (id.verdict) {
    case Identification::Verdict::named:
      j["verdict"] = "named";
      j["name"] = id.name;
      break;
    case Identification::Verdict::rectangular: {
      j["verdict"] = "rectangular";
      json d = json::array();
      for (const auto& v : id.diagonal) d.push_back(int_to_json(v));
      j["diagonal"] = std::move(d);
      break;
    }
    case Identification::Verdict::unknown:
      j["verdict"] = "unknown";
      break;
  }
  if (id.certificate) j["certificate"] = matrix_to_json(*id.certificate);
  return j;
}

}  // namespace latkit
