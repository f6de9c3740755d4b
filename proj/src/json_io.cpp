#include "freehull/json_io.hpp"

#include <fstream>

namespace freehull {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix json: expected nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw Error("matrix json: ragged rows");
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Json tuple_to_json(const MatrixTuple& X) {
  Json j;
  j["g"] = X.g();
  j["n"] = X.n();
  Json mats = Json::array();
  for (int k = 0; k < X.g(); ++k) mats.push_back(matrix_to_json(X[k]));
  j["matrices"] = std::move(mats);
  return j;
}

MatrixTuple tuple_from_json(const Json& j) {
  const int g = j.at("g").get<int>();
  const int n = j.at("n").get<int>();
  const Json& mats = j.at("matrices");
  if (static_cast<int>(mats.size()) != g) throw Error("point json: need g matrices");
  std::vector<Matrix> e;
  for (const Json& mj : mats) {
    Matrix m = matrix_from_json(mj);
    if (m.rows() != n || m.cols() != n) throw Error("point json: matrix size != n");
    e.push_back(std::move(m));
  }
  return MatrixTuple(std::move(e));
}

Json moments_to_json(const MomentSequence& Y) {
  Json j;
  j["g"] = Y.g();
  j["n"] = Y.n();
  j["max_deg"] = Y.max_deg();
  Json vals = Json::object();
  for (const Word& w : Y.class_reps()) vals[w.str()] = matrix_to_json(Y.get(w));
  j["values"] = std::move(vals);
  return j;
}

MomentSequence moments_from_json(const Json& j) {
  const int g = j.at("g").get<int>();
  const int n = j.at("n").get<int>();
  const int max_deg = j.at("max_deg").get<int>();
  MomentSequence Y(g, n, max_deg);
  const Json& vals = j.at("values");
  std::size_t provided = 0;
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    const Word w = Word::parse(it.key(), g);
    Matrix m = matrix_from_json(it.value());
    if (m.rows() != n || m.cols() != n)
      throw Error("moment json: value for '" + it.key() + "' has wrong size");
    Y.set(w, m);
    if (w == w.class_rep()) ++provided;
  }
  if (provided < Y.class_reps().size()) {
    // every class representative must be present (the involute may stand in)
    for (const Word& rep : Y.class_reps()) {
      if (!vals.contains(rep.str()) && !vals.contains(rep.involution().str()))
        throw Error("moment json: missing class " + rep.str());
    }
  }
  Y.validate(1e-9);
  return Y;
}

Json pencil_to_json(const AffinePencil& L) {
  Json j;
  j["size"] = L.size;
  j["g"] = L.g;
  int hs = 0, hk = 0;
  for (const auto& s : L.lifted) (s.skew ? hk : hs)++;
  j["h_sym"] = hs;
  j["h_skew"] = hk;
  j["A0"] = matrix_to_json(L.A0);
  Json A = Json::array();
  for (const Matrix& m : L.A) A.push_back(matrix_to_json(m));
  j["A"] = std::move(A);
  Json slots = Json::array();
  for (const auto& s : L.lifted)
    slots.push_back(Json{{"skew", s.skew}, {"coeff", matrix_to_json(s.coeff)}});
  j["slots"] = std::move(slots);
  return j;
}

AffinePencil pencil_from_json(const Json& j) {
  AffinePencil L;
  L.size = j.at("size").get<int>();
  L.g = j.at("g").get<int>();
  L.A0 = matrix_from_json(j.at("A0"));
  for (const Json& m : j.at("A")) L.A.push_back(matrix_from_json(m));
  if (j.contains("slots"))
    for (const Json& s : j.at("slots"))
      L.lifted.push_back({matrix_from_json(s.at("coeff")), s.at("skew").get<bool>()});
  L.check();
  return L;
}

Json certificate_to_json(const InfeasibilityCertificate& cert) {
  Json j;
  Json mult = Json::array();
  for (const Matrix& m : cert.multipliers) mult.push_back(matrix_to_json(m));
  j["multipliers"] = std::move(mult);
  j["box_plus"] = std::vector<double>(cert.box_plus.data(),
                                      cert.box_plus.data() + cert.box_plus.size());
  j["box_minus"] = std::vector<double>(cert.box_minus.data(),
                                       cert.box_minus.data() + cert.box_minus.size());
  j["gap"] = cert.gap;
  return j;
}

Json verdict_to_json(const Verdict& v, const std::string& witness_file) {
  Json j;
  j["status"] = to_string(v.status);
  j["margin"] = v.margin;
  if (!witness_file.empty()) j["witness_file"] = witness_file;
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  if (!v.note.empty()) j["note"] = v.note;
  j["newton_iterations"] = v.newton_iterations;
  return j;
}

Json gns_to_json(const GnsResult& r) {
  Json j;
  Json Z = Json::array();
  for (const Matrix& z : r.Z) Z.push_back(matrix_to_json(z));
  j["Z"] = std::move(Z);
  j["Q"] = matrix_to_json(r.Q);
  j["rank_profile"] = r.rank_profile;
  j["residuals"] = Json{{"moment_mismatch", r.moment_mismatch},
                        {"p_min_eig", r.p_min_eig},
                        {"z_asymmetry", r.z_asymmetry}};
  return j;
}

Json separation_to_json(const SeparationFunctional& f) {
  Json j;
  j["c0"] = f.c0;
  Json C = Json::array();
  for (const Matrix& c : f.C) C.push_back(matrix_to_json(c));
  j["C"] = std::move(C);
  j["provenance"] = f.provenance;
  return j;
}

Json quad_certificate_to_json(const QuadModuleCertificate& cert) {
  Json j;
  Json sb = Json::array(), lb = Json::array();
  for (const Word& w : cert.sos_basis) sb.push_back(w.str());
  for (const Word& w : cert.loc_basis) lb.push_back(w.str());
  j["sos_basis"] = std::move(sb);
  j["sos_gram"] = matrix_to_json(cert.sos_gram);
  j["loc_basis"] = std::move(lb);
  j["loc_gram"] = matrix_to_json(cert.loc_gram);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace freehull
