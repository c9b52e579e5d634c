// SPDX-License-Identifier: Apache-2.0

#include "gdn/ply.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

namespace gdn {
namespace {

enum class ScalarType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<ScalarType> parse_scalar_type(const std::string& name) {
  if (name == "char" || name == "int8") return ScalarType::Int8;
  if (name == "uchar" || name == "uint8") return ScalarType::UInt8;
  if (name == "short" || name == "int16") return ScalarType::Int16;
  if (name == "ushort" || name == "uint16") return ScalarType::UInt16;
  if (name == "int" || name == "int32") return ScalarType::Int32;
  if (name == "uint" || name == "uint32") return ScalarType::UInt32;
  if (name == "float" || name == "float32") return ScalarType::Float32;
  if (name == "double" || name == "float64") return ScalarType::Float64;
  return std::nullopt;
}

std::size_t scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::Int8:
    case ScalarType::UInt8: return 1;
    case ScalarType::Int16:
    case ScalarType::UInt16: return 2;
    case ScalarType::Int32:
    case ScalarType::UInt32:
    case ScalarType::Float32: return 4;
    case ScalarType::Float64: return 8;
  }
  return 0;
}

bool is_float(ScalarType t) { return t == ScalarType::Float32 || t == ScalarType::Float64; }

struct Property {
  std::string name;
  ScalarType type = ScalarType::UInt8;
  bool is_list = false;
  ScalarType count_type = ScalarType::UInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  PlyFormat format = PlyFormat::Ascii;
  std::vector<Element> elements;
  std::optional<int> bit_depth;
};

constexpr const char* kBitDepthComment = "bit_depth";

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream ss(line);
  return {std::istream_iterator<std::string>(ss), std::istream_iterator<std::string>()};
}

Header read_header(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") throw ParseError("missing 'ply' magic line");

  Header header;
  bool have_format = false;
  while (true) {
    if (!next_line()) throw ParseError("header ended before 'end_header'");
    const auto words = split_words(line);
    if (words.empty()) continue;
    const auto& key = words[0];
    if (key == "end_header") break;
    if (key == "comment" && words.size() == 3 && words[1] == kBitDepthComment) {
      int b = 0;
      auto [ptr, ec] = std::from_chars(words[2].data(), words[2].data() + words[2].size(), b);
      if (ec == std::errc() && ptr == words[2].data() + words[2].size() && b >= 1 && b <= kMaxBitDepth)
        header.bit_depth = b;
      continue;
    }
    if (key == "comment" || key == "obj_info") continue;
    if (key == "format") {
      if (words.size() != 3) throw ParseError("malformed format line: " + line);
      if (words[1] == "ascii")
        header.format = PlyFormat::Ascii;
      else if (words[1] == "binary_little_endian")
        header.format = PlyFormat::BinaryLittleEndian;
      else
        throw ParseError("unsupported PLY format '" + words[1] + "'");
      have_format = true;
    } else if (key == "element") {
      if (words.size() != 3) throw ParseError("malformed element line: " + line);
      Element e;
      e.name = words[1];
      std::size_t count = 0;
      auto [ptr, ec] =
          std::from_chars(words[2].data(), words[2].data() + words[2].size(), count);
      if (ec != std::errc() || ptr != words[2].data() + words[2].size())
        throw ParseError("bad element count: " + line);
      e.count = count;
      header.elements.push_back(std::move(e));
    } else if (key == "property") {
      if (header.elements.empty()) throw ParseError("property before any element");
      Property p;
      if (words.size() == 5 && words[1] == "list") {
        auto ct = parse_scalar_type(words[2]);
        auto it = parse_scalar_type(words[3]);
        if (!ct || !it) throw ParseError("unknown list property types: " + line);
        p.is_list = true;
        p.count_type = *ct;
        p.type = *it;
        p.name = words[4];
      } else if (words.size() == 3) {
        auto t = parse_scalar_type(words[1]);
        if (!t) throw ParseError("unknown property type '" + words[1] + "'");
        p.type = *t;
        p.name = words[2];
      } else {
        throw ParseError("malformed property line: " + line);
      }
      header.elements.back().properties.push_back(std::move(p));
    } else {
      throw ParseError("unexpected header line: " + line);
    }
  }
  if (!have_format) throw ParseError("header has no format line");
  return header;
}

// Positions of the vertex properties we consume, indexed into Element::properties.
struct VertexLayout {
  std::array<std::size_t, 3> position{};
  std::array<std::size_t, 3> color{};
  bool float_position = false;
};

VertexLayout resolve_vertex_layout(const Element& vertex, std::vector<std::string>* warnings) {
  VertexLayout layout;
  std::array<bool, 3> have_pos{}, have_col{};
  const char* pos_names[] = {"x", "y", "z"};
  const char* col_names[] = {"red", "green", "blue"};
  for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
    const auto& p = vertex.properties[i];
    if (p.is_list) throw ParseError("list property '" + p.name + "' in vertex element");
    bool used = false;
    for (int a = 0; a < 3; ++a) {
      if (p.name == pos_names[a]) {
        layout.position[a] = i;
        have_pos[a] = true;
        layout.float_position = layout.float_position || is_float(p.type);
        used = true;
      } else if (p.name == col_names[a]) {
        if (p.type != ScalarType::UInt8)
          throw ParseError("color property '" + p.name + "' must be uchar");
        layout.color[a] = i;
        have_col[a] = true;
        used = true;
      }
    }
    if (!used && warnings) warnings->push_back("skipped vertex property '" + p.name + "'");
  }
  for (int a = 0; a < 3; ++a) {
    if (!have_pos[a]) throw ParseError(std::string("missing vertex property '") + pos_names[a] + "'");
    if (!have_col[a]) throw ParseError(std::string("missing color property '") + col_names[a] + "'");
  }
  return layout;
}

// Converts raw per-vertex rows into the cloud, choosing quantized or float storage.
// A declared bit depth is kept when it holds every coordinate.
PointCloud assemble(const std::vector<Position>& pos, Signal colors, bool float_position,
                    std::optional<int> declared_bits) {
  PointCloud pc;
  pc.colors = std::move(colors);
  const double grid_limit = static_cast<double>(std::uint64_t{1} << kMaxBitDepth);
  const bool integral = !float_position && std::all_of(pos.begin(), pos.end(), [&](const Position& p) {
    return p[0] >= 0 && p[1] >= 0 && p[2] >= 0 && p[0] < grid_limit && p[1] < grid_limit &&
           p[2] < grid_limit;
  });
  if (integral) {
    pc.coords.reserve(pos.size());
    for (const auto& p : pos)
      pc.coords.push_back({static_cast<std::uint32_t>(p[0]), static_cast<std::uint32_t>(p[1]),
                           static_cast<std::uint32_t>(p[2])});
    pc.bit_depth = std::max(required_bit_depth(pc.coords), declared_bits.value_or(1));
  } else {
    pc.positions = pos;
  }
  return pc;
}

template <typename T>
T read_le(const unsigned char* p) {
  T value;
  std::memcpy(&value, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    std::reverse(bytes, bytes + sizeof(T));
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

double read_scalar(const unsigned char* p, ScalarType t) {
  switch (t) {
    case ScalarType::Int8: return read_le<std::int8_t>(p);
    case ScalarType::UInt8: return read_le<std::uint8_t>(p);
    case ScalarType::Int16: return read_le<std::int16_t>(p);
    case ScalarType::UInt16: return read_le<std::uint16_t>(p);
    case ScalarType::Int32: return read_le<std::int32_t>(p);
    case ScalarType::UInt32: return read_le<std::uint32_t>(p);
    case ScalarType::Float32: return read_le<float>(p);
    case ScalarType::Float64: return read_le<double>(p);
  }
  return 0.0;
}

class ByteCursor {
 public:
  explicit ByteCursor(std::vector<unsigned char> data) : data_(std::move(data)) {}

  const unsigned char* take(std::size_t n, const char* what) {
    if (data_.size() - pos_ < n)
      throw ParseError(std::string("truncated binary body while reading ") + what);
    const unsigned char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }

 private:
  std::vector<unsigned char> data_;
  std::size_t pos_ = 0;
};

void skip_binary_element(ByteCursor& cur, const Element& e) {
  for (std::size_t i = 0; i < e.count; ++i) {
    for (const auto& p : e.properties) {
      if (p.is_list) {
        const double n = read_scalar(cur.take(scalar_size(p.count_type), e.name.c_str()), p.count_type);
        if (n < 0) throw ParseError("negative list length in element '" + e.name + "'");
        cur.take(static_cast<std::size_t>(n) * scalar_size(p.type), e.name.c_str());
      } else {
        cur.take(scalar_size(p.type), e.name.c_str());
      }
    }
  }
}

PointCloud read_binary(std::istream& in, const Header& header, std::size_t vertex_index,
                       const VertexLayout& layout) {
  std::vector<unsigned char> body((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  ByteCursor cur(std::move(body));
  for (std::size_t e = 0; e < vertex_index; ++e) skip_binary_element(cur, header.elements[e]);

  const Element& vertex = header.elements[vertex_index];
  std::vector<std::size_t> offsets(vertex.properties.size());
  std::size_t stride = 0;
  for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
    offsets[i] = stride;
    stride += scalar_size(vertex.properties[i].type);
  }

  std::vector<Position> pos(vertex.count);
  Signal colors(vertex.count);
  for (std::size_t v = 0; v < vertex.count; ++v) {
    const unsigned char* row = cur.take(stride, "vertex");
    for (int a = 0; a < 3; ++a) {
      const auto& pp = vertex.properties[layout.position[a]];
      pos[v][a] = read_scalar(row + offsets[layout.position[a]], pp.type);
      colors[v][a] = row[offsets[layout.color[a]]];
    }
  }
  return assemble(pos, std::move(colors), layout.float_position, header.bit_depth);
}

PointCloud read_ascii(std::istream& in, const Header& header, std::size_t vertex_index,
                      const VertexLayout& layout) {
  std::string line;
  for (std::size_t e = 0; e < vertex_index; ++e) {
    for (std::size_t i = 0; i < header.elements[e].count; ++i) {
      if (!std::getline(in, line))
        throw ParseError("truncated ascii body in element '" + header.elements[e].name + "'");
    }
  }

  const Element& vertex = header.elements[vertex_index];
  const std::size_t nprops = vertex.properties.size();
  std::vector<double> values(nprops);
  std::vector<Position> pos(vertex.count);
  Signal colors(vertex.count);
  for (std::size_t v = 0; v < vertex.count; ++v) {
    if (!std::getline(in, line)) throw ParseError("truncated ascii body: expected " +
                                                  std::to_string(vertex.count) + " vertices, got " +
                                                  std::to_string(v));
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < nprops; ++k) {
      while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) throw ParseError("vertex line " + std::to_string(v) + " has too few values");
      auto [next, ec] = std::from_chars(p, end, values[k]);
      if (ec != std::errc()) throw ParseError("bad number on vertex line " + std::to_string(v));
      p = next;
    }
    for (int a = 0; a < 3; ++a) {
      pos[v][a] = values[layout.position[a]];
      const double c = values[layout.color[a]];
      if (c < 0 || c > 255 || c != std::floor(c))
        throw ParseError("color value out of uchar range on vertex line " + std::to_string(v));
      colors[v][a] = c;
    }
  }
  return assemble(pos, std::move(colors), layout.float_position, header.bit_depth);
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

PointCloud load_ply(std::istream& in, std::vector<std::string>* warnings) {
  const Header header = read_header(in);
  auto it = std::find_if(header.elements.begin(), header.elements.end(),
                         [](const Element& e) { return e.name == "vertex"; });
  if (it == header.elements.end()) throw ParseError("no vertex element");
  const auto vertex_index = static_cast<std::size_t>(it - header.elements.begin());
  const VertexLayout layout = resolve_vertex_layout(*it, warnings);
  if (header.format == PlyFormat::Ascii) return read_ascii(in, header, vertex_index, layout);
  return read_binary(in, header, vertex_index, layout);
}

PointCloud load_ply(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return load_ply(in, warnings);
}

void save_ply(std::ostream& out, const PointCloud& pc, PlyFormat format) {
  const bool q = pc.quantized();
  const char* pos_type = q ? "int" : "double";
  out << "ply\n"
      << "format " << (format == PlyFormat::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n";
  if (q) out << "comment " << kBitDepthComment << ' ' << pc.bit_depth << "\n";
  out << "element vertex " << pc.size() << "\n"
      << "property " << pos_type << " x\n"
      << "property " << pos_type << " y\n"
      << "property " << pos_type << " z\n"
      << "property uchar red\n"
      << "property uchar green\n"
      << "property uchar blue\n"
      << "end_header\n";

  if (format == PlyFormat::Ascii) {
    std::ostringstream body;
    body.precision(17);
    for (std::size_t i = 0; i < pc.size(); ++i) {
      if (q)
        body << pc.coords[i][0] << ' ' << pc.coords[i][1] << ' ' << pc.coords[i][2];
      else
        body << pc.positions[i][0] << ' ' << pc.positions[i][1] << ' ' << pc.positions[i][2];
      for (double c : pc.colors[i]) body << ' ' << int{to_byte(c)};
      body << '\n';
    }
    out << body.str();
  } else {
    const std::size_t stride = (q ? 3 * 4 : 3 * 8) + 3;
    std::vector<unsigned char> buf(stride * pc.size());
    auto put = [](unsigned char* dst, auto value) {
      if constexpr (std::endian::native == std::endian::big) {
        unsigned char bytes[sizeof(value)];
        std::memcpy(bytes, &value, sizeof(value));
        std::reverse(bytes, bytes + sizeof(value));
        std::memcpy(dst, bytes, sizeof(value));
      } else {
        std::memcpy(dst, &value, sizeof(value));
      }
    };
    for (std::size_t i = 0; i < pc.size(); ++i) {
      unsigned char* row = buf.data() + i * stride;
      for (int a = 0; a < 3; ++a) {
        if (q)
          put(row + 4 * a, static_cast<std::int32_t>(pc.coords[i][a]));
        else
          put(row + 8 * a, pc.positions[i][a]);
      }
      unsigned char* col = row + (q ? 12 : 24);
      for (int a = 0; a < 3; ++a) col[a] = to_byte(pc.colors[i][a]);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw std::ios_base::failure("failed writing PLY output");
}

void save_ply(const std::filesystem::path& path, const PointCloud& pc, PlyFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot create " + path.string());
  save_ply(out, pc, format);
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing " + path.string());
}

}  // namespace gdn
