#pragma once

// Input language, sessions of named objects, JSON reports and the example
// corpus behind the gradecm command-line tool.

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradecm/cmsense.hpp"
#include "gradecm/constructors.hpp"

namespace gradecm {

inline constexpr const char* kSchemaVersion = "gradecm/1";

class DslError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateName, UnknownReference, Unsupported };
  DslError(Kind kind, int line, int col, const std::string& msg);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Kind kind_;
  int line_, col_;
};

struct SessionOptions {
  std::size_t budget = 0;  // 0: library default
  int n_max = 3;
  int degree_bound = 2;
  int workers = 1;
  std::size_t family_cap = 40;
};

struct Binding {
  enum class Kind { Ring, Ideal, Module, Family, Limit, Perfect, Invariant, Valuation };
  Kind kind = Kind::Ring;
  std::string name;
  /// Canonical statement; printing every binding in order reproduces the session.
  std::string text;

  RingHandle ring;  // Ring, and the ring of an Ideal, Module or Family
  std::shared_ptr<Ideal> ideal;
  std::vector<std::string> ideal_gens;  // as written, for limit and perfect rings
  std::string owner;                    // ring-like binding an ideal or family lives in
  int level = -1;                       // realization level of a limit or perfect-closure ideal
  std::shared_ptr<PresentedModule> module;
  std::shared_ptr<TestFamily> family;
  std::shared_ptr<LimitRing> limit;
  std::shared_ptr<PerfectClosure> perfect;
  std::shared_ptr<InvariantRing> invariant;
  std::shared_ptr<ValuationModel> valuation;
};

struct Command {
  std::string verb;  // grade, cm-check, height, min
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> opts;
  int line = 0;
  std::string text;
  std::string opt(const std::string& key, const std::string& fallback = "") const;
};

class Session {
 public:
  SessionOptions options;

  /// Parses statements and appends their bindings and commands.
  void parse(const std::string& text);
  std::string print() const;

  bool has(const std::string& name) const;
  const Binding& at(const std::string& name) const;
  const std::vector<Binding>& bindings() const { return bindings_; }
  const std::vector<Command>& commands() const { return commands_; }

  /// The ring of a ring-like binding: a ring, an idealization, the
  /// presentation of an invariant ring, level 0 of a perfect closure.
  RingHandle ring(const std::string& name) const;
  const Ideal& ideal(const std::string& name) const;
  PresentedModule module(const std::string& name) const;

  /// Executes the command statements; one JSON report per command.
  nlohmann::json run_commands() const;

 private:
  friend class DslParser;
  std::vector<Binding> bindings_;
  std::vector<Command> commands_;
};

nlohmann::json to_json(const GradeReport& g);
nlohmann::json to_json(const CMReport& r);
nlohmann::json value_json(int v);

/// Grade of a named ideal on a named module (the ring itself when empty).
nlohmann::json run_grade(const Session& s, const std::string& ideal, const std::string& module,
                         const std::string& notion);
/// A sense check on a ring; `family` names a family binding, a file with one
/// ideal per line, or is empty for the generated family.
nlohmann::json run_cm_check(const Session& s, const std::string& sense, const std::string& ring,
                            const std::string& family);

std::vector<std::string> corpus_ids();
/// Runs the selected items (all when empty) on up to `workers` threads.
nlohmann::json run_corpus(const std::vector<std::string>& selection, int workers);

/// Entry point of the command-line tool; returns the exit status.
int cli_main(int argc, char** argv);

}  // namespace gradecm
