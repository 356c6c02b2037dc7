#include "euler/textio.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "euler/tactics.hpp"

namespace euler {

ParseError::ParseError(ErrorCode code, SourceSpan span, const std::string& message)
    : EulerError(code, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      span_(span) {}

ReplayFailure::ReplayFailure(std::size_t step_number, SourceSpan span, ErrorCode cause,
                             const std::string& message)
    : EulerError(ErrorCode::ReplayError, std::to_string(span.line) + ":" + std::to_string(span.column) +
                                             ": step " + std::to_string(step_number) + ": " + message),
      step_number_(step_number),
      span_(span),
      cause_(cause) {}

namespace textio {

namespace {

enum class Tok { LBrace, RBrace, LParen, RParen, Amp, Turnstile, Semi, Colon, Slash, Dash, Ident, Number, End };

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Amp: return "'&'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Slash: return "'/'";
    case Tok::Dash: return "'-'";
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, {}, {start, start, line, col}});
        return out;
      }
      const char c = src_[pos_];
      Tok kind;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        kind = Tok::Number;
      } else if (c == '|' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        advance();
        advance();
        kind = Tok::Turnstile;
      } else {
        switch (c) {
          case '{': kind = Tok::LBrace; break;
          case '}': kind = Tok::RBrace; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '&': kind = Tok::Amp; break;
          case ';': kind = Tok::Semi; break;
          case ':': kind = Tok::Colon; break;
          case '/': kind = Tok::Slash; break;
          case '-': kind = Tok::Dash; break;
          default:
            throw ParseError(ErrorCode::SyntaxError, {start, start + 1, line, col},
                             std::string("unexpected character '") + c + "'");
        }
        advance();
      }
      out.push_back({kind, src_.substr(start, pos_ - start), {start, pos_, line, col}});
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.start, b.end, a.line, a.column}; }

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }

  const Token& expect(Tok kind) {
    if (!at(kind)) error("expected " + std::string(tok_name(kind)));
    return tokens_[pos_++];
  }

  const Token& expect_word(std::string_view word) {
    if (!at_word(word)) error("expected '" + std::string(word) + "'");
    return tokens_[pos_++];
  }

  void expect_end() {
    if (!at(Tok::End)) error("unexpected trailing input");
  }

  [[noreturn]] void error(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'";
    throw ParseError(ErrorCode::SyntaxError, t.span, message + ", found " + found);
  }

  std::size_t number() {
    const Token& t = expect(Tok::Number);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{}) throw ParseError(ErrorCode::SyntaxError, t.span, "number out of range");
    return value;
  }

  Contour contour() { return Contour(std::string(expect(Tok::Ident).text)); }

  std::pair<Zone, SourceSpan> zone() {
    const SourceSpan open = expect(Tok::LParen).span;
    ContourSet in;
    while (at(Tok::Ident)) in.insert(contour());
    const SourceSpan close = expect(Tok::RParen).span;
    return {Zone(std::move(in)), join(open, close)};
  }

  UnitaryDiagram unitary() {
    const SourceSpan open = expect(Tok::LBrace).span;
    expect_word("contours");
    expect(Tok::Colon);
    ContourSet contours;
    while (at(Tok::Ident)) contours.insert(contour());
    expect(Tok::Semi);

    expect_word("zones");
    expect(Tok::Colon);
    ZoneSet zones;
    while (at(Tok::LParen)) {
      auto [z, span] = zone();
      if (!z.subset_of(contours)) {
        throw ParseError(ErrorCode::SemanticError, span,
                         "zone " + zone_to_string(z) + " uses an undeclared contour");
      }
      zones.insert(std::move(z));
    }
    expect(Tok::Semi);

    expect_word("shaded");
    expect(Tok::Colon);
    ZoneSet shaded;
    while (at(Tok::LParen)) {
      auto [z, span] = zone();
      if (!zones.count(z)) {
        throw ParseError(ErrorCode::SemanticError, span,
                         "shaded zone " + zone_to_string(z) + " is not among the zones");
      }
      shaded.insert(std::move(z));
    }
    const SourceSpan close = expect(Tok::RBrace).span;
    if (!zones.count(Zone{})) {
      throw ParseError(ErrorCode::SemanticError, join(open, close),
                       "the background zone () must be listed among the zones");
    }
    return UnitaryDiagram(std::move(contours), std::move(zones), std::move(shaded));
  }

  Diagram diagram() {
    if (at(Tok::LBrace)) return unitary();
    expect(Tok::LParen);
    Diagram left = diagram();
    expect(Tok::Amp);
    Diagram right = diagram();
    expect(Tok::RParen);
    return Diagram::conjunction(std::move(left), std::move(right));
  }

  Subgoal theorem() {
    Diagram antecedent = diagram();
    expect(Tok::Turnstile);
    Diagram consequent = diagram();
    return Subgoal(std::move(antecedent), std::move(consequent));
  }

  Path path() {
    if (at(Tok::Dash)) {
      ++pos_;
      return {};
    }
    Path out;
    while (true) {
      const Token& t = expect(Tok::Ident);
      if (t.text == "L") {
        out.push_back(Side::Left);
      } else if (t.text == "R") {
        out.push_back(Side::Right);
      } else {
        throw ParseError(ErrorCode::SyntaxError, t.span, "path steps are L or R");
      }
      if (!at(Tok::Slash)) return out;
      ++pos_;
    }
  }

  CopyDirection direction() {
    const Token& t = expect(Tok::Ident);
    if (t.text == "ltr") return CopyDirection::LeftToRight;
    if (t.text == "rtl") return CopyDirection::RightToLeft;
    throw ParseError(ErrorCode::SyntaxError, t.span, "copy direction is ltr or rtl");
  }

  RuleArgs args(Rule rule) {
    switch (rule) {
      case Rule::EraseContour:
      case Rule::IntroduceContour: return contour();
      case Rule::EraseShading:
      case Rule::IntroduceShadedZone:
      case Rule::RemoveShadedZone: return zone().first;
      case Rule::Combine:
      case Rule::Idempotency: return std::monostate{};
      case Rule::CopyContour: {
        CopyDirection dir = direction();
        return CopyContourArgs{dir, contour()};
      }
      case Rule::CopyShading: {
        CopyDirection dir = direction();
        ZoneSet targets;
        while (at(Tok::LParen)) targets.insert(zone().first);
        return CopyShadingArgs{dir, std::move(targets)};
      }
    }
    return std::monostate{};
  }

  // A step statement; the current token is 'apply' or 'discharge'.
  ScriptStep step() {
    const SourceSpan first = peek().span;
    if (at_word("discharge")) {
      ++pos_;
      std::size_t goal = number();
      return {StepRecord{Discharge{goal}, {}}, join(first, tokens_[pos_ - 1].span)};
    }
    expect_word("apply");
    const Token& name = expect(Tok::Ident);
    auto rule = rule_from_name(name.text);
    if (!rule) throw ParseError(ErrorCode::SyntaxError, name.span, "unknown rule '" + std::string(name.text) + "'");
    expect_word("at");
    std::size_t goal = number();
    Path p = path();
    RuleArgs a = args(*rule);
    return {StepRecord{RuleApplication{*rule, goal, std::move(p), std::move(a)}, {}},
            join(first, tokens_[pos_ - 1].span)};
  }

  ProofScript script() {
    expect_word("theorem");
    std::string name(expect(Tok::Ident).text);
    expect(Tok::Colon);
    ProofScript out{std::move(name), theorem(), {}};
    while (!at(Tok::End)) {
      if (at_word("apply") || at_word("discharge")) {
        out.entries.emplace_back(step());
      } else if (at_word("tactic")) {
        const SourceSpan first = peek().span;
        ++pos_;
        ScriptTactic t;
        t.name = std::string(expect(Tok::Ident).text);
        expect_word("at");
        t.goal_index = number();
        t.span = join(first, tokens_[pos_ - 1].span);
        if (at(Tok::LBrace)) {
          ++pos_;
          std::vector<ScriptStep> steps;
          while (!at(Tok::RBrace)) {
            if (!at_word("apply") && !at_word("discharge")) error("expected 'apply', 'discharge' or '}'");
            steps.push_back(step());
          }
          ++pos_;
          t.expansion = std::move(steps);
        }
        out.entries.emplace_back(std::move(t));
      } else {
        error("expected 'apply', 'discharge' or 'tactic'");
      }
    }
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void print_unitary(const UnitaryDiagram& u, std::string& out) {
  out += "{contours:";
  for (const auto& c : u.contours()) out += " " + c.name();
  out += "; zones:";
  for (const auto& z : u.zones()) out += " " + zone_to_string(z);
  out += "; shaded:";
  for (const auto& z : u.shaded()) out += " " + zone_to_string(z);
  out += "}";
}

void print_into(const Diagram& d, std::string& out) {
  if (d.is_unitary()) {
    print_unitary(d.unitary(), out);
    return;
  }
  out += "(";
  print_into(d.left(), out);
  out += d.is_conjunction() ? " & " : " |- ";
  print_into(d.right(), out);
  out += ")";
}

std::string direction_text(CopyDirection d) { return d == CopyDirection::LeftToRight ? "ltr" : "rtl"; }

}  // namespace

Diagram parse_diagram(std::string_view text) {
  Parser p(text);
  Diagram d = p.diagram();
  p.expect_end();
  return d;
}

Subgoal parse_theorem(std::string_view text) {
  Parser p(text);
  Subgoal g = p.theorem();
  p.expect_end();
  return g;
}

Path parse_path(std::string_view text) {
  Parser p(text);
  Path out = p.path();
  p.expect_end();
  return out;
}

std::string print_diagram(const Diagram& d) {
  std::string out;
  print_into(d, out);
  return out;
}

std::string print_theorem(const Subgoal& goal) {
  return print_diagram(goal.antecedent()) + " |- " + print_diagram(goal.consequent());
}

std::string print_step(const StepRecord& step) {
  if (const auto* d = std::get_if<Discharge>(&step.kind)) return "discharge " + std::to_string(d->goal_index);
  const auto& app = std::get<RuleApplication>(step.kind);
  std::string out = "apply " + std::string(rule_name(app.rule)) + " at " + std::to_string(app.goal_index) +
                    " " + path_to_string(app.path);
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Contour>) {
          out += " " + a.name();
        } else if constexpr (std::is_same_v<T, Zone>) {
          out += " " + zone_to_string(a);
        } else if constexpr (std::is_same_v<T, CopyContourArgs>) {
          out += " " + direction_text(a.direction) + " " + a.contour.name();
        } else if constexpr (std::is_same_v<T, CopyShadingArgs>) {
          out += " " + direction_text(a.direction);
          for (const auto& z : a.targets) out += " " + zone_to_string(z);
        }
      },
      app.args);
  return out;
}

ProofScript parse_script(std::string_view text) {
  Parser p(text);
  return p.script();
}

std::string save_script(const Proof& proof, std::string_view name) {
  std::ostringstream out;
  out << "theorem " << name << " : " << print_theorem(proof.theorem()) << "\n";
  const auto& steps = proof.steps();
  for (std::size_t i = 0; i < steps.size();) {
    const auto& tag = steps[i].provenance;
    if (!tag) {
      out << print_step(steps[i]) << "\n";
      ++i;
      continue;
    }
    out << "tactic " << tag->name << " at " << tag->goal_index << " {\n";
    while (i < steps.size() && steps[i].provenance == tag) {
      out << "  " << print_step(steps[i]) << "\n";
      ++i;
    }
    out << "}\n";
  }
  return out.str();
}

namespace {

std::vector<StepRecord> untagged(std::vector<StepRecord> steps) {
  for (auto& s : steps) s.provenance.reset();
  return steps;
}

}  // namespace

Proof replay_script(const ProofScript& script, const ReplayOptions& options) {
  Proof proof(script.theorem);
  std::size_t step_number = 0;

  auto apply = [&](StepRecord step, const SourceSpan& span) {
    ++step_number;
    try {
      proof = proof.extended(step);
    } catch (const EulerError& e) {
      throw ReplayFailure(step_number, span, e.code(), e.what());
    }
  };

  for (const auto& entry : script.entries) {
    if (const auto* s = std::get_if<ScriptStep>(&entry)) {
      apply(s->step, s->span);
      continue;
    }
    const auto& t = std::get<ScriptTactic>(entry);
    const bool rerun = options.authority == ScriptAuthority::Tactics || !t.expansion || options.strict;
    std::optional<Proof> rerun_result;
    if (rerun) {
      try {
        rerun_result = tactics::run_tactic(proof, t.name, t.goal_index);
      } catch (const EulerError& e) {
        throw ReplayFailure(step_number + 1, t.span, e.code(), e.what());
      }
      if (!rerun_result) {
        throw ReplayFailure(step_number + 1, t.span, ErrorCode::TacticFailed,
                            "tactic " + t.name + " failed");
      }
    }
    if (t.expansion && options.strict) {
      std::vector<StepRecord> recorded;
      for (const auto& s : *t.expansion) recorded.push_back(s.step);
      std::vector<StepRecord> produced(rerun_result->steps().begin() + static_cast<std::ptrdiff_t>(proof.steps().size()),
                                       rerun_result->steps().end());
      if (untagged(std::move(produced)) != recorded) {
        throw ReplayFailure(step_number + 1, t.span, ErrorCode::ReplayError,
                            "tactic " + t.name + " no longer produces the recorded steps");
      }
    }
    if (t.expansion && options.authority == ScriptAuthority::Steps) {
      const TacticTag tag{t.name, t.goal_index, proof.states().size() - 1};
      for (const auto& s : *t.expansion) {
        StepRecord step = s.step;
        step.provenance = tag;
        apply(std::move(step), s.span);
      }
    } else {
      step_number += rerun_result->steps().size() - proof.steps().size();
      proof = std::move(*rerun_result);
    }
  }
  return proof;
}

Proof load_script(std::string_view text, const ReplayOptions& options) {
  return replay_script(parse_script(text), options);
}

}  // namespace textio
}  // namespace euler
