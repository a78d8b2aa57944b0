#include "igeo/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace igeo {

namespace {

// Whitespace tokenizer that drops `#` comments and remembers line numbers.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& token) {
    while (true) {
      if (line_stream_ >> token) return true;
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line_stream_.clear();
      line_stream_.str(line);
    }
  }

  std::string expect(const char* what) {
    std::string token;
    if (!next(token)) fail(std::string("unexpected end of input, expected ") + what);
    return token;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no_) + ": " + msg);
  }

  template <class T>
  T parse(const char* what) {
    const std::string token = expect(what);
    std::istringstream is(token);
    T value{};
    if (!(is >> value) || !is.eof()) fail(std::string("invalid ") + what + " '" + token + "'");
    return value;
  }

 private:
  std::istream& in_;
  std::istringstream line_stream_;
  int line_no_ = 0;
};

}  // namespace

SimplicialMesh read_noff(std::istream& in) {
  TokenReader reader(in);
  const std::string header = reader.expect("header");
  if (header != "nOFF") reader.fail("expected header 'nOFF', got '" + header + "'");
  const int dim = reader.parse<int>("dimension");
  if (dim < 2 || dim > kMaxDim) reader.fail("dimension out of range: " + std::to_string(dim));
  const long long nv = reader.parse<long long>("vertex count");
  const long long nf = reader.parse<long long>("facet count");
  if (nv < 0 || nf < 0) reader.fail("negative counts");

  std::vector<Vector> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    Vector v(dim);
    for (int k = 0; k < dim; ++k) v[k] = reader.parse<double>("vertex coordinate");
    vertices.push_back(v);
  }
  std::vector<int> facets;
  facets.reserve(static_cast<std::size_t>(nf * dim));
  for (long long f = 0; f < nf; ++f) {
    for (int k = 0; k < dim; ++k) facets.push_back(reader.parse<int>("vertex index"));
  }
  std::string extra;
  if (reader.next(extra)) reader.fail("trailing content '" + extra + "'");
  try {
    return SimplicialMesh(dim, std::move(vertices), std::move(facets));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

SimplicialMesh read_noff_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_noff(in);
}

void write_noff(std::ostream& out, const SimplicialMesh& mesh) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "nOFF\n" << mesh.dim() << '\n' << mesh.num_vertices() << ' ' << mesh.num_facets() << '\n';
  for (const Vector& v : mesh.vertices()) {
    for (int k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k];
    out << '\n';
  }
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const auto ids = mesh.facet(f);
    for (std::size_t k = 0; k < ids.size(); ++k) out << (k ? " " : "") << ids[k];
    out << '\n';
  }
  out.precision(old_precision);
}

void write_noff_file(const std::filesystem::path& path, const SimplicialMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_noff(out, mesh);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace igeo
