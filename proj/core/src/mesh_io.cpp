#include "reilly/errors.hpp"
#include "reilly/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace reilly {

namespace {

// Next line that is neither blank nor a comment.
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (std::any_of(line.begin(), line.end(), [](unsigned char ch) { return !std::isspace(ch); })) return true;
  }
  return false;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int lineno, const std::string& msg) {
  throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + msg);
}

TriMesh read_off(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  int lineno = 0;
  if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "empty file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") parse_fail(path, lineno, "missing OFF header");

  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv)) {
    if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "missing counts line");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf)) parse_fail(path, lineno, "malformed counts line");
    counts >> ne;
  } else if (!(header >> nf)) {
    parse_fail(path, lineno, "malformed counts line");
  }
  if (nv < 0 || nf < 0) parse_fail(path, lineno, "negative element count");

  TriMesh mesh;
  mesh.positions.reserve(nv);
  mesh.faces.reserve(nf);
  for (long i = 0; i < nv; ++i) {
    if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "unexpected end of file in vertex list");
    std::istringstream row(line);
    Vec3 p;
    if (!(row >> p.x() >> p.y() >> p.z())) parse_fail(path, lineno, "malformed vertex");
    mesh.positions.push_back(p);
  }
  for (long i = 0; i < nf; ++i) {
    if (!next_content_line(in, line, lineno)) parse_fail(path, lineno, "unexpected end of file in face list");
    std::istringstream row(line);
    int count = 0;
    Face f{};
    if (!(row >> count)) parse_fail(path, lineno, "malformed face");
    if (count != 3) parse_fail(path, lineno, "only triangles are supported (got " + std::to_string(count) + "-gon)");
    if (!(row >> f[0] >> f[1] >> f[2])) parse_fail(path, lineno, "malformed face indices");
    for (int idx : f) {
      if (idx < 0 || idx >= nv) parse_fail(path, lineno, "face index " + std::to_string(idx) + " out of range");
    }
    mesh.faces.push_back(f);
  }
  return mesh;
}

int parse_obj_index(const std::string& token, std::size_t nv, const std::filesystem::path& path, int lineno) {
  const std::string head = token.substr(0, token.find('/'));
  long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stol(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    parse_fail(path, lineno, "malformed face index '" + token + "'");
  }
  const long resolved = idx > 0 ? idx - 1 : static_cast<long>(nv) + idx;
  if (idx == 0 || resolved < 0 || resolved >= static_cast<long>(nv)) {
    parse_fail(path, lineno, "face index " + std::to_string(idx) + " out of range");
  }
  return static_cast<int>(resolved);
}

TriMesh read_obj(std::istream& in, const std::filesystem::path& path) {
  TriMesh mesh;
  std::string line;
  int lineno = 0;
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(row >> p.x() >> p.y() >> p.z())) parse_fail(path, lineno, "malformed vertex");
      mesh.positions.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      for (std::string tok; row >> tok;) tokens.push_back(tok);
      if (tokens.size() != 3) {
        parse_fail(path, lineno, "only triangles are supported (got " + std::to_string(tokens.size()) + " indices)");
      }
      Face f{};
      for (int c = 0; c < 3; ++c) f[c] = parse_obj_index(tokens[c], mesh.positions.size(), path, lineno);
      mesh.faces.push_back(f);
    } else if (tag == "o" && mesh.name.empty()) {
      row >> mesh.name;
    }
    // vt, vn, g, s, usemtl, mtllib: ignored
  }
  return mesh;
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".off") return MeshFormat::kOff;
  if (ext == ".obj") return MeshFormat::kObj;
  throw InvalidArgument("cannot infer mesh format from extension '" + ext + "' (expected .off or .obj)");
}

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TriMesh mesh = format == MeshFormat::kOff ? read_off(in, path) : read_obj(in, path);
  if (mesh.name.empty()) mesh.name = path.stem().string();
  validate(mesh);
  return mesh;
}

TriMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_path(path)); }

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(std::numeric_limits<double>::max_digits10);
  if (format == MeshFormat::kOff) {
    out << "OFF\n" << mesh.positions.size() << ' ' << mesh.faces.size() << " 0\n";
    for (const Vec3& p : mesh.positions) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    for (const Face& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  } else {
    if (!mesh.name.empty()) out << "o " << mesh.name << '\n';
    for (const Vec3& p : mesh.positions) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    for (const Face& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path) {
  save_mesh(mesh, path, format_from_path(path));
}

}  // namespace reilly
