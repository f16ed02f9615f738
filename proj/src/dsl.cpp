// Copyright 2026 The qcopy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcopy/dsl.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qcopy/errors.hpp"
#include "qcopy/optics.hpp"
#include "qcopy/qutrit.hpp"
#include "text.hpp"

namespace qcopy::dsl {

namespace {

constexpr double kSupportedRatio = 0.5;

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind { Word, Number, Equals, LParen, RParen, Comma, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Number: return "number '" + std::string(tok.text) + "'";
    case TokenKind::Word: return "'" + std::string(tok.text) + "'";
    default: return "'" + std::string(tok.text) + "'";
  }
}

bool is_word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  };

  while (pos < src.size()) {
    const char c = src[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    std::size_t len = 1;
    if (is_word_start(c)) {
      tok.kind = TokenKind::Word;
      while (pos + len < src.size() && is_word_char(src[pos + len])) ++len;
    } else if (is_digit(c) || c == '-' || c == '+' || c == '.') {
      tok.kind = TokenKind::Number;
      std::size_t k = pos;
      if (src[k] == '-' || src[k] == '+') ++k;
      while (k < src.size() && (is_digit(src[k]) || src[k] == '.')) ++k;
      if (k < src.size() && (src[k] == 'e' || src[k] == 'E')) {
        std::size_t e = k + 1;
        if (e < src.size() && (src[e] == '-' || src[e] == '+')) ++e;
        if (e < src.size() && is_digit(src[e])) {
          k = e;
          while (k < src.size() && is_digit(src[k])) ++k;
        }
      }
      len = k - pos;
      if (!text::parse_double(src.substr(pos, len))) {
        throw SyntaxError("malformed number '" + std::string(src.substr(pos, std::max<std::size_t>(len, 1))) + "'",
                          line, col);
      }
    } else if (c == '=') {
      tok.kind = TokenKind::Equals;
    } else if (c == '(') {
      tok.kind = TokenKind::LParen;
    } else if (c == ')') {
      tok.kind = TokenKind::RParen;
    } else if (c == ',') {
      tok.kind = TokenKind::Comma;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    tok.text = src.substr(pos, len);
    out.push_back(tok);
    advance(len);
  }
  out.push_back(Token{TokenKind::End, {}, line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct Located {
  Element element;
  std::string_view keyword;
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExperimentAst run() {
    if (peek().kind == TokenKind::End) throw SyntaxError("missing source", peek().line, peek().column);

    std::optional<Token> source_kw;
    std::string source;
    std::vector<Located> elements;
    while (peek().kind != TokenKind::End) {
      const Token kw = expect(TokenKind::Word, "a statement keyword");
      if (kw.text == "source") {
        if (source_kw) throw SemanticError("duplicate source", kw.line, kw.column);
        if (!elements.empty()) throw SemanticError("source must come first", kw.line, kw.column);
        source_kw = kw;
        source = ident();
      } else if (kw.text == "beamsplitter") {
        elements.push_back({beamsplitter(kw), kw.text, kw.line, kw.column});
      } else if (kw.text == "phase") {
        elements.push_back({phase(), kw.text, kw.line, kw.column});
      } else if (kw.text == "absorber") {
        elements.push_back({absorber(kw), kw.text, kw.line, kw.column});
      } else if (kw.text == "detectors") {
        elements.push_back({detectors(kw), kw.text, kw.line, kw.column});
      } else {
        throw SyntaxError("unknown statement '" + std::string(kw.text) + "'", kw.line, kw.column);
      }
    }
    if (!source_kw) throw SyntaxError("missing source", tokens_.front().line, tokens_.front().column);
    check_topology(elements);

    ExperimentAst ast;
    ast.source = std::move(source);
    for (auto& e : elements) ast.elements.push_back(std::move(e.element));
    return ast;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token take() {
    Token t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  Token expect(TokenKind kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError("expected " + what + ", found " + describe(t), t.line, t.column);
    return take();
  }

  void keyword(std::string_view word) {
    const Token& t = peek();
    if (t.kind != TokenKind::Word || t.text != word) {
      throw SyntaxError("expected '" + std::string(word) + "', found " + describe(t), t.line, t.column);
    }
    take();
  }

  std::string ident() { return std::string(expect(TokenKind::Word, "an identifier").text); }

  double number() { return *text::parse_double(expect(TokenKind::Number, "a number").text); }

  int integer() {
    const Token t = expect(TokenKind::Number, "an integer");
    auto v = text::parse_int<int>(t.text);
    if (!v) throw SyntaxError("expected an integer, found " + describe(t), t.line, t.column);
    return *v;
  }

  double assigned(std::string_view key) {
    keyword(key);
    expect(TokenKind::Equals, "'='");
    return number();
  }

  Element beamsplitter(const Token& kw) {
    Beamsplitter bs;
    bs.name = ident();
    bs.ratio = assigned("ratio");
    if (bs.ratio != kSupportedRatio) {
      throw SemanticError("only 1:1 beamsplitters are supported (ratio=0.5), got ratio=" + text::shortest(bs.ratio),
                          kw.line, kw.column);
    }
    return bs;
  }

  Element phase() {
    PhaseDelay ph;
    ph.name = ident();
    if (peek().kind == TokenKind::Equals) {
      take();
      ph.setting = number();
      return ph;
    }
    const Token sweep_kw = peek();
    keyword("sweep");
    expect(TokenKind::LParen, "'('");
    PhaseSweep sweep;
    sweep.start = number();
    expect(TokenKind::Comma, "','");
    sweep.stop = number();
    expect(TokenKind::Comma, "','");
    sweep.points = integer();
    expect(TokenKind::RParen, "')'");
    if (sweep.points < 2) throw SemanticError("sweep needs at least 2 points", sweep_kw.line, sweep_kw.column);
    ph.setting = sweep;
    return ph;
  }

  Element absorber(const Token& kw) {
    Absorber ab;
    ab.name = ident();
    const Token& t = peek();
    if (t.kind == TokenKind::Word && t.text == "visibility") {
      const double v = assigned("visibility");
      if (!(v >= 0.0 && v <= 1.0)) {
        throw SemanticError("visibility must be in [0, 1], got " + text::shortest(v), kw.line, kw.column);
      }
      ab.model = FringeVisibility{v};
      return ab;
    }
    if (!(t.kind == TokenKind::Word && t.text == "t")) {
      throw SyntaxError("expected 't=' or 'visibility=', found " + describe(t), t.line, t.column);
    }
    FilmAmplitudes film;
    film.t = assigned("t");
    film.r = assigned("r");
    const double gain_s = std::norm(film.t + film.r);
    const double gain_a = std::norm(film.t - film.r);
    if (!optics::AbsorberParams::is_passive(film.t, film.r)) {
      const bool sym = gain_s > gain_a;
      throw SemanticError(std::string("eigenmode gain (|t") + (sym ? "+" : "-") + "r|^2 = " +
                              text::significant(sym ? gain_s : gain_a, 6) + " > 1)",
                          kw.line, kw.column);
    }
    if (gain_s + gain_a <= 0.0) throw SemanticError("absorber is opaque (t = r = 0)", kw.line, kw.column);
    ab.model = film;
    return ab;
  }

  Element detectors(const Token& kw) {
    Detectors d;
    d.first = ident();
    d.second = ident();
    if (d.first == d.second) throw SemanticError("detector names must differ", kw.line, kw.column);
    return d;
  }

  void check_topology(const std::vector<Located>& elements) const {
    static constexpr std::string_view kOrder[] = {"beamsplitter", "phase", "absorber", "detectors"};
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const auto& e = elements[k];
      if (k >= std::size(kOrder)) {
        throw SemanticError("unexpected '" + std::string(e.keyword) + "' after detectors", e.line, e.column);
      }
      if (e.keyword != kOrder[k]) {
        throw SemanticError("expected " + std::string(kOrder[k]) + " here, found " + std::string(e.keyword) +
                                " (topology is source, beamsplitter, phase, absorber, detectors)",
                            e.line, e.column);
      }
    }
    if (elements.size() < std::size(kOrder)) {
      const Token& end = tokens_.back();
      throw SemanticError("missing " + std::string(kOrder[elements.size()]), end.line, end.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> PhaseSweep::grid() const {
  std::vector<double> out;
  if (points <= 0) return out;
  if (points == 1) return {start};
  out.reserve(static_cast<std::size_t>(points));
  const double last = points - 1;
  // Weighted form keeps both ends exact and the midpoint of a symmetric sweep at 0.
  for (int k = 0; k < points; ++k) out.push_back(start * ((last - k) / last) + stop * (k / last));
  return out;
}

std::vector<double> PhaseDelay::values() const {
  if (const double* v = std::get_if<double>(&setting)) return {*v};
  return std::get<PhaseSweep>(setting).grid();
}

Topology topology(const ExperimentAst& ast) {
  if (ast.elements.size() != 4) {
    throw UnsupportedTopology("expected beamsplitter, phase, absorber, detectors; got " +
                              std::to_string(ast.elements.size()) + " elements");
  }
  const auto* bs = std::get_if<Beamsplitter>(&ast.elements[0]);
  const auto* ph = std::get_if<PhaseDelay>(&ast.elements[1]);
  const auto* ab = std::get_if<Absorber>(&ast.elements[2]);
  const auto* det = std::get_if<Detectors>(&ast.elements[3]);
  if (!bs || !ph || !ab || !det) {
    throw UnsupportedTopology("elements must be beamsplitter, phase, absorber, detectors in that order");
  }
  if (ast.source.empty()) throw UnsupportedTopology("missing source");
  if (bs->ratio != kSupportedRatio) throw UnsupportedTopology("only 1:1 beamsplitters are supported");
  if (const auto* sweep = std::get_if<PhaseSweep>(&ph->setting); sweep && sweep->points < 2) {
    throw UnsupportedTopology("sweep needs at least 2 points");
  }
  if (const auto* film = std::get_if<FilmAmplitudes>(&ab->model)) {
    if (!optics::AbsorberParams::is_passive(film->t, film->r)) throw UnsupportedTopology("absorber is not passive");
    if (film->t == 0.0 && film->r == 0.0) throw UnsupportedTopology("absorber is opaque");
  } else {
    const double v = std::get<FringeVisibility>(ab->model).visibility;
    if (!(v >= 0.0 && v <= 1.0)) throw UnsupportedTopology("visibility outside [0, 1]");
  }
  return {*bs, *ph, *ab, *det};
}

ExperimentAst parse(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string pretty_print(const ExperimentAst& ast) {
  using text::shortest;
  std::ostringstream out;
  out << "source " << ast.source << "\n";
  for (const auto& element : ast.elements) {
    std::visit(
        [&out](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Beamsplitter>) {
            out << "beamsplitter " << e.name << " ratio=" << shortest(e.ratio) << "\n";
          } else if constexpr (std::is_same_v<T, PhaseDelay>) {
            out << "phase " << e.name;
            if (const double* v = std::get_if<double>(&e.setting)) {
              out << "=" << shortest(*v) << "\n";
            } else {
              const auto& s = std::get<PhaseSweep>(e.setting);
              out << " sweep(" << shortest(s.start) << ", " << shortest(s.stop) << ", " << s.points << ")\n";
            }
          } else if constexpr (std::is_same_v<T, Absorber>) {
            out << "absorber " << e.name;
            if (const auto* film = std::get_if<FilmAmplitudes>(&e.model)) {
              out << " t=" << shortest(film->t) << " r=" << shortest(film->r) << "\n";
            } else {
              out << " visibility=" << shortest(std::get<FringeVisibility>(e.model).visibility) << "\n";
            }
          } else {
            out << "detectors " << e.first << " " << e.second << "\n";
          }
        },
        element);
  }
  return out.str();
}

void CompileOptions::validate() const {
  if (!(pulse_duration > 0.0) || !std::isfinite(pulse_duration)) {
    throw DomainError("pulse_duration must be positive");
  }
  if (!(gap >= 0.0) || !std::isfinite(gap)) throw DomainError("gap must be non-negative");
}

double amp_scale(const Absorber& absorber) {
  if (const auto* film = std::get_if<FilmAmplitudes>(&absorber.model)) {
    return optics::visibility_to_amp_scale(optics::fringe_visibility(optics::AbsorberParams(film->t, film->r)));
  }
  return optics::visibility_to_amp_scale(std::get<FringeVisibility>(absorber.model).visibility);
}

double oracle_transmission(const Absorber& absorber, double phi) {
  if (const auto* film = std::get_if<FilmAmplitudes>(&absorber.model)) {
    return optics::detector_probabilities(optics::AbsorberParams(film->t, film->r), phi).transmission();
  }
  return ramsey_closed_form(amp_scale(absorber), phi).transmit;
}

std::vector<CompiledPoint> compile(const ExperimentAst& ast, const DeviceSpec& dev, const CompileOptions& opts) {
  const Topology topo = topology(ast);
  dev.validate();
  opts.validate();

  const double scale = amp_scale(topo.absorber);
  const double pitch = opts.pulse_duration + opts.gap;
  auto pulse = [&](double carrier, double area, double phase, int slot) {
    PulseInstruction ins;
    ins.carrier_freq = carrier;
    ins.envelope = GaussianEnvelope::with_default_sigma(opts.pulse_duration, area);
    ins.phase = phase;
    ins.start_time = slot * pitch;
    return ins;
  };

  std::vector<CompiledPoint> out;
  for (double phi : topo.phase.values()) {
    out.push_back({phi, PulseSchedule({
                            pulse(dev.omega_ab, std::numbers::pi / 2.0, 0.0, 0),
                            pulse(dev.omega_ab, scale * (std::numbers::pi / 2.0), phi, 1),
                            pulse(dev.omega_bc, std::numbers::pi, 0.0, 2),
                        })});
  }
  return out;
}

}  // namespace qcopy::dsl
