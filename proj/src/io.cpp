#include "augsimp/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace augsimp {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based start position
};

struct ContentLine {
  std::string text;  // comment stripped, not trimmed
  int number;        // 1-based line number in the file
};

std::vector<ContentLine> content_lines(std::istream& in) {
  std::vector<ContentLine> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({raw, number});
  }
  return out;
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t' || s[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    out.push_back({s.substr(start, i - start), (int)start + 1});
  }
  return out;
}

int parse_int(const Token& tok, int line) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok.text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.text.size())
    throw parse_error("expected an integer, got \"" + tok.text + "\"", line, tok.column);
  return value;
}

int parse_point(const Token& tok, int line, int n) {
  int value = parse_int(tok, line);
  if (value < 1 || value > n)
    throw parse_error("point " + std::to_string(value) + " out of range 1.." +
                          std::to_string(n),
                      line, tok.column);
  return value;
}

}  // namespace

MonoidFile read_monoid_file(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty())
    throw parse_error("empty file: expected the degree n on the first line", 1, 1);
  auto head = tokenize(lines[0].text);
  if (head.size() != 1)
    throw parse_error("expected a single integer (the degree n)", lines[0].number,
                      head[1].column);
  MonoidFile out;
  out.n = parse_int(head[0], lines[0].number);
  if (out.n < 1)
    throw parse_error("the degree must be at least 1", lines[0].number, head[0].column);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto toks = tokenize(lines[li].text);
    if ((int)toks.size() != out.n)
      throw parse_error("generator line has " + std::to_string(toks.size()) +
                            " entries, expected " + std::to_string(out.n),
                        lines[li].number, (int)lines[li].text.size() + 1);
    Transformation t;
    for (const auto& tok : toks)
      t.images.push_back(parse_point(tok, lines[li].number, out.n));
    out.generators.push_back(std::move(t));
  }
  return out;
}

SystemFile read_system_file(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty()) throw parse_error("empty file: expected \"n <n> r <r>\"", 1, 1);
  auto head = tokenize(lines[0].text);
  if (head.size() != 4 || head[0].text != "n" || head[2].text != "r")
    throw parse_error("expected header \"n <n> r <r>\"", lines[0].number,
                      head.empty() ? 1 : head[0].column);
  int n = parse_int(head[1], lines[0].number);
  int r = parse_int(head[3], lines[0].number);
  if (n < 1 || r < 1 || r > n)
    throw parse_error("need 1 <= r <= n", lines[0].number, head[1].column);

  std::size_t li = 1;
  if (li >= lines.size() || tokenize(lines[li].text).size() != 1 ||
      tokenize(lines[li].text)[0].text != "images:")
    throw parse_error("expected \"images:\" section",
                      li < lines.size() ? lines[li].number : lines.back().number + 1, 1);
  ++li;

  std::vector<std::vector<int>> sets;
  while (li < lines.size()) {
    auto toks = tokenize(lines[li].text);
    if (toks.size() == 1 && toks[0].text == "partitions:") break;
    if ((int)toks.size() != r)
      throw parse_error("image set has " + std::to_string(toks.size()) +
                            " points, expected " + std::to_string(r),
                        lines[li].number, toks.back().column);
    std::vector<int> s;
    for (const auto& tok : toks) s.push_back(parse_point(tok, lines[li].number, n));
    sets.push_back(std::move(s));
    ++li;
  }
  if (sets.empty())
    throw parse_error("the images: section is empty",
                      lines[li - 1].number, 1);
  if (li >= lines.size())
    throw parse_error("expected \"partitions:\" section", lines.back().number + 1, 1);
  ++li;

  SystemFile out;
  try {
    out.images = make_image_system(n, r, std::move(sets));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what(), lines[1].number, 1);
  }

  while (li < lines.size()) {
    std::vector<std::vector<int>> blocks;
    std::stringstream pieces(lines[li].text);
    std::string piece;
    int offset = 0;
    while (std::getline(pieces, piece, '|')) {
      auto toks = tokenize(piece);
      if (toks.empty())
        throw parse_error("empty block", lines[li].number, offset + 1);
      std::vector<int> b;
      for (auto tok : toks) {
        tok.column += offset;
        b.push_back(parse_point(tok, lines[li].number, n));
      }
      blocks.push_back(std::move(b));
      offset += (int)piece.size() + 1;
    }
    if ((int)blocks.size() != r)
      throw parse_error("partition has " + std::to_string(blocks.size()) +
                            " blocks, expected " + std::to_string(r),
                        lines[li].number, 1);
    try {
      out.partitions.push_back(make_partition(n, std::move(blocks)));
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what(), lines[li].number, 1);
    }
    ++li;
  }
  if (out.partitions.empty())
    throw parse_error("the partitions: section is empty", lines.back().number, 1);
  return out;
}

void write_system_file(std::ostream& out, const ImageSystem& images,
                       const std::vector<SetPartition>& partitions) {
  out << "n " << images.n << " r " << images.r << "\n";
  out << "images:\n";
  for (const auto& s : images.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << "\n";
  }
  out << "partitions:\n";
  for (const auto& p : partitions) {
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      if (k) out << " | ";
      for (std::size_t i = 0; i < p.blocks[k].size(); ++i)
        out << (i ? " " : "") << p.blocks[k][i];
    }
    out << "\n";
  }
}

FileKind detect_file_kind(const std::string& content) {
  std::istringstream in(content);
  auto lines = content_lines(in);
  if (lines.empty()) throw parse_error("empty file", 1, 1);
  auto toks = tokenize(lines[0].text);
  if (toks[0].text == "n") return FileKind::system;
  std::size_t pos = 0;
  try {
    (void)std::stoi(toks[0].text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == toks[0].text.size()) return FileKind::monoid;
  throw parse_error("cannot tell the file kind: expected a degree or \"n <n> r <r>\"",
                    lines[0].number, toks[0].column);
}

std::string sandwich_dump(const ReesData& d) {
  std::ostringstream out;
  out << '%';
  for (const auto& bk : d.n1_kernels) out << '\t' << block_str(bk);
  out << '\n';
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    out << '%' << '(' << d.n2_images[i].first << ',' << d.n2_images[i].second << ')'
        << '\t';
    for (std::size_t k = 0; k < d.p[i].size(); ++k) {
      if (k) out << '\t';
      out << group_entry_str(d.p[i][k]);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json report_json(const SimplicityReport& rep) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  nlohmann::ordered_json conds = nlohmann::ordered_json::object();
  for (int k = 0; k < 5; ++k) {
    nlohmann::ordered_json c;
    c["status"] = to_string(rep.conditions[k].status);
    c["evidence"] = rep.conditions[k].evidence;
    conds[std::to_string(k + 1)] = std::move(c);
  }
  j["conditions"] = std::move(conds);
  j["incidence_rank"] = rep.incidence_rank;
  j["wperp_dim"] = (int)rep.wperp_basis.size();
  if (rep.jclass.has_value()) {
    nlohmann::ordered_json jc;
    jc["rank"] = rep.jclass->rank;
    j["jclass"] = std::move(jc);
  } else {
    j["jclass"] = nullptr;
  }
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : rep.graph.edges)
    edges.push_back(nlohmann::ordered_json::array({a, b}));
  nlohmann::ordered_json graph;
  graph["edges"] = std::move(edges);
  j["graph"] = std::move(graph);
  return j;
}

nlohmann::ordered_json rank2_json(const Rank2Result& res) {
  nlohmann::ordered_json inner;
  inner["P"] = sandwich_dump(res.data);
  inner["Pprime"] = dump(res.pprime);
  inner["rank"] = res.pprime_rank;
  inner["verdict"] = to_string(res.verdict);
  nlohmann::ordered_json j;
  j["rank2"] = std::move(inner);
  return j;
}

nlohmann::ordered_json error_json(const std::string& kind, const std::string& message,
                                  int line, int column) {
  nlohmann::ordered_json e;
  e["kind"] = kind;
  e["message"] = message;
  if (line > 0) {
    e["line"] = line;
    e["column"] = column;
  }
  nlohmann::ordered_json j;
  j["error"] = std::move(e);
  return j;
}

}  // namespace augsimp
