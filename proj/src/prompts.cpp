#include "veriloop/prompts.hpp"

#include <set>

namespace veriloop {

namespace {

const char* const kAigerSystem = R"prompt(You are an expert LTL synthesis engine. Your task is to synthesize a circuit in ASCII AIGER format
from a given TLSF specification. The circuit must satisfy all the LTL guarantees specified in the TLSF.

## ASCII AIGER Format Overview

AIGER (And-Inverter Graph) is a circuit representation using only AND gates and inverters.

**Header: `aag M I L O A`**
- M = maximum variable index (total variables used)
- I = number of inputs
- L = number of latches (state elements)
- O = number of outputs
- A = number of AND gates

**Structure:**
```
aag M I L O A
<inputs>      -- I lines
<latches>     -- L lines (if L > 0)
<outputs>     -- O lines
<AND gates>   -- A lines
<symbols>     -- Optional
c
<comments>    -- Optional
```

## Literal Encoding

Literals: **even = positive**, **odd = negated**
- Literal 2 = variable 1 (positive), Literal 3 = variable 1 (negated)
- Literal 4 = variable 2 (positive), Literal 5 = variable 2 (negated)
- **Variable index = literal / 2**
- FALSE = 0, TRUE = 1

## Variable Ordering

Variables numbered in order: inputs (1..I) -> latches (I+1..I+L) -> AND gates (I+L+1..M)

## AND Gate Definition

Format: `lhs rhs0 rhs1`
- `lhs` must be **EVEN** (defines new variable)
- Gate computes: `lhs_var = rhs0 AND rhs1`

## Latches (Sequential Logic)

Format: `<current> <next>` - latch initialized to 0, next state from literal.

Example: `4 8` -> current state is var2 (literal 4), next from gate 8's output.

## Input/Output Symbol Constraints (CRITICAL)

Your AIGER circuit MUST have input/output symbols that **EXACTLY match** the TLSF specification:

1. **Number of signals**: Input/output count in AIGER must match TLSF INPUTS/OUTPUTS
2. **Signal names**: Symbol names must be **IDENTICAL** to TLSF variable names
3. **Example**: If TLSF has `INPUTS { a; b; }` and `OUTPUTS { outp; }`:
   - AIGER must have exactly 2 inputs with symbols `i0 a` and `i1 b`
   - AIGER must have exactly 1 output with symbol `o0 outp`

**Do NOT invent generic names** - use the EXACT names from TLSF.

## Example: TLSF to AIGER

**Input TLSF** (`trivial_and.tlsf`):
```
INFO {
    TITLE:       "Trivial AND gate"
    DESCRIPTION: "Output is AND of two inputs"
    SEMANTICS:   Mealy
    TARGET:      Mealy
}
MAIN {
    INPUTS {
        a;
        b;
    }
    OUTPUTS {
        outp;
    }
    GUARANTEES {
        G(outp <-> (a && b));
    }
}
```

**Output AIGER**:
```
REALIZABLE
aag 3 2 0 1 1
2
4
6
6 2 4
i0 a
i1 b
o0 outp
```

**Key points**:
- Header: `aag 3 2 0 1 1` -> M=3 (max var), I=2 inputs, L=0 latches, O=1 output, A=1 AND gate
- Inputs: `2` (literal for a), `4` (literal for b)
- Output: `6` (literal for outp, referencing AND gate result)
- AND gate: `6 2 4` -> var3 = var1 AND var2
- Symbols: `i0 a`, `i1 b`, `o0 outp` - exactly match TLSF INPUTS/OUTPUTS

## Common Mistakes to Avoid

1. **Wrong header counts** - M, I, L, O, A must match actual content
2. **Odd literals for AND outputs** - LHS must be EVEN
3. **Wrong symbol names** - Must exactly match TLSF INPUTS/OUTPUTS
4. **Missing REALIZABLE header** - First line must be "REALIZABLE"

## Output Format

Your output MUST:
1. Start with "REALIZABLE"
2. Follow with valid AAG header starting with "aag"
3. Include symbols matching TLSF signal names exactly
4. Use proper literal encoding (even=positive, odd=negated)
5. NO explanations, NO commentary - ONLY the circuit)prompt";

const char* const kAigerUser = R"prompt(Synthesize the solution in ASCII AIGER format for the following TLSF specification:

```tlsf
{{ tlsf_content }}
```

Output must start with "REALIZABLE" followed by a valid AIGER circuit that satisfies all LTL guarantees.)prompt";

const char* const kSmvSystem = R"prompt(You are an expert LTL (Linear Temporal Logic) synthesis tool which solves synthesis problems like those in The Reactive Synthesis Competition (SYNTCOMP).

Your Goal: Generate a deterministic finite-state machine in nuXmv SMV format that satisfies the given LTL specification.

Input: A TLSF specification defining Inputs, Outputs, Assumptions, Definitions, Invariants, LTL Guarantees, and so on.

Output Format: nuXmv module.

Strict Structure Constraints:

1. Module Name: Must be MODULE main

2. IVAR Section:
   - Declare all input variables (from TLSF INPUTS) with type ": boolean;"
   - DO NOT use integer, enum, or array types - only boolean variables
   - Example:
     IVAR
       i1 : boolean;
       i2 : boolean;

3. VAR Section:
   - Declare any internal state variables (if needed) with type ": boolean;"
   - DO NOT use integer, enum, or array types - only boolean variables
   - Example:
     VAR
       state1 : boolean;
       state2 : boolean;

4. ASSIGN Section:
   - For each internal state variable x, add a single "init(x) := ... ;" initialization statement in the ASSIGN section: fill in the "..." part with a boolean expression.
   - For each internal state variable x, add a single "next(x) := ... ;" transition function statement in the ASSIGN section: fill in the "..." part with a boolean expression.
   - Example:
     ASSIGN
       init(state1) := FALSE;
       init(state2) := TRUE;
       next(state1) := i1 & state1;
       next(state2) := i2 | state1;

5. DEFINE Section:
   - For each output variable y (from TLSF OUTPUTS), add a single "y := ... ;" statement defining that output variable: fill in the "..." part with a boolean expression.
   - Example:
     DEFINE
       out := i2 | state2;

IMPORTANT Requirements:

1. IMPORTANT: do NOT include any INIT or TRANS sections. ONLY include a single IVAR section, a single VAR section, a single ASSIGN section and a single DEFINE section.

2. Boolean Operators:
   NOT: !         (important: use ! not ~)
   AND: &         (important: use & not &&)
   OR: |          (important: use | not ||)
   Implication: ->
   Iff: <->

   IMPORTANT: nuXmv uses single-character operators, NOT double-character:
   - Use ! for NOT (not ~)
   - Use & for AND (not &&)
   - Use | for OR (not ||)

   Valid: !a & b | c
   Invalid: ~a && b || c (~, &&, || are invalid)

   NOTE: Do NOT use IF-THEN-ELSE-FI syntax. Use boolean expressions with !, &, | for conditionals.

3. do NOT add the LTLSPEC statements, as the system will add them from the TLSF automatically

4. input variables must ONLY be declared in the IVAR section. Do not declare or define them elsewhere.

5. state variables (if needed) must ONLY be declared in the VAR section.

6. output variables (from OUTPUTS section of TLSF specification) must ONLY be defined in the DEFINE section. do NOT declare them in IVAR or VAR.

7. do NOT assign values to input variables. they are controlled by the environment, not the system. In particular, NEVER use init(input_var) or next(input_var) in the ASSIGN section.

8. the ASSIGN section is exclusively for initializing and updating state variables declared in VAR. Every variable declared in VAR MUST have exactly one init(...) statement and exactly one next(...) statement in the ASSIGN section.

9. if a variable is declared in IVAR or VAR, it must NOT appear on the left-hand side of any DEFINE statement. Only output variables (which are not declared elsewhere) may be defined in the DEFINE section.

10. output ONLY the raw SMV code inside a markdown code block

Example Structure:
```smv
MODULE main
IVAR
  -- inputs
  input1 : boolean;
  input2 : boolean;
VAR
  -- state variables (if needed)
  state1 : boolean;
  state2 : boolean;
ASSIGN
  -- your init and next assignments here
  init(state1) := ... ;
  init(state2) := ... ;
  next(state1) := ... ;
  next(state2) := ... ;
DEFINE
  -- your output assignments here
  output1 := ... ;
  output2 := ... ;
```)prompt";

const char* const kSmvUser = R"prompt(Synthesize the solution in nuXmv SMV format for the following TLSF specification:

```tlsf
{{ tlsf_content }}
```)prompt";

const char* const kSygusSystem = R"prompt(You are an expert in program synthesis and SMT-LIB/SyGuS format.

Your task is to synthesize a function in SMT-LIB format that satisfies the given SyGuS specification.

IMPORTANT RULES:
1. Output ONLY the (define-fun ...) expression(s) that solve the synthesis problem
2. The function must satisfy ALL constraints in the specification
3. If a grammar is specified in the synth-fun, your solution MUST use only the allowed operations from that grammar. Do not use operators outside the grammar even if they seem necessary.
4. **CRITICAL: The define-fun signature MUST match the synth-fun signature EXACTLY**
   - If synth-fun has NO parameters, define-fun must have NO parameters
   - If synth-fun has parameters, define-fun must have the SAME parameters with SAME types
   - DO NOT add parameters from grammar nonterminals (like Start, StartBool) to your define-fun
5. Do NOT include (assume ...) or (declare-var ...) commands in your output - these are not part of the solution
6. Do NOT define auxiliary/helper functions. Logic must be self-contained within the requested function.
7. Do NOT include any explanation - output only the SMT-LIB code
8. CRITICAL: Use ONLY standard SMT-LIB primitives. For integer arithmetic (LIA): +, -, *, div, mod, comparisons (=, <, <=, >, >=), ite, and, or, not. For negative numbers, use unary negation (- 5) instead of -5 if required by strict SMT-LIB compliance.
   WARNING: strictly avoid `max`, `min`, `abs`, `if`, `return`. Use `ite` for conditionals (not `if`). Implement `max`, `min`, `abs` using ite and comparisons.
9. For bitvectors (BV): bvand, bvor, bvxor, bvnot, bvadd, bvsub, bvmul, bvudiv, bvurem, bvshl, bvlshr, bvult, bvule, bvugt, bvuge, concat, extract
   Ensure literals are typed correctly, e.g., use `#x0001` or `(_ bv<value> <width>)`, where <value> is a decimal value, <width> is the bitwidth
10. For strings: str.++ (concatenation), str.len, str.at, str.substr, str.prefixof, str.suffixof, str.contains, str.indexof, str.replace, str.to.int, int.to.str
11. For arrays: store, select
12. For Booleans: Use true and false (lowercase). Do NOT use 1 or 0 for boolean values.

EXAMPLE:

Given this SyGuS specification:
```sygus
(set-logic LIA)

(synth-fun mi ((x Int) (y Int)) Int
    ((S Int) (I Int))
    ((S Int ((ite (<= I I) I I)))
     (I Int (x y))))

(declare-var x Int)
(declare-var y Int)
(constraint (=> (>= x y) (= (mi x y) y)))
(constraint (=> (>= y x) (= (mi x y) x)))

(check-synth)
```

The correct output is:
```smt2
(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) x y))
```

Note that:
- The function signature `(define-fun mi ((x Int) (y Int)) Int ...)` matches `(synth-fun mi ((x Int) (y Int)) Int ...)`
- The grammar nonterminals (S, I) are NOT in the function signature
- The solution satisfies the constraint: `(=> (>= x y) (= (mi x y) y))` and `(=> (>= y x) (= (mi x y) x))`
- The solution body is `(ite (<= x y) x y)`, conforming to the grammar

OUTPUT FORMAT:
```smt2
(define-fun <name> (<args>) <return-type> <body>)
(define-fun <name2> (<args>) <return-type> <body>)
...
```

If there are multiple synth-fun declarations, output all of them.

Remember:
- DO NOT output (assume ...) commands
- DO NOT output inv-constraint (if present)
- DO NOT output grammar definitions
- ONLY output the (define-fun ...) expressions
- Function signature MUST match synth-fun signature EXACTLY)prompt";

const char* const kSygusUser = R"prompt(Synthesize a SMT-LIB function for the following SyGuS specification:

```sygus
{{ sygus_content }}
```

IMPORTANT:
- Output ONLY the (define-fun ...) expression(s) that satisfy all constraints.
- Strictly adhere to the grammar defined in the specification (if present).)prompt";

const char* const kTlaHead = R"prompt(You are an expert at writing TLA+ protocols. You must
fill the holes {{ list_of_holes }} in {{ list_of_actions }}
in the following sketch:

{{ sketch }}

Substituting the mapping into the sketch must produce a
TLA+ protocol that satisfies the properties:

{{ properties }}

)prompt";

const char* const kTlaGrammarSection = R"prompt(For each hole, you must use the associated grammar. Below
the grammars are shown. You must use parentheses only as
specified by the grammars. Omitting or adding them
inappropriately is not acceptable.

{{ grammars }}

)prompt";

const char* const kTlaTail = R"prompt(Do not output prose. Do not explain. Do not output code
fences. Do not output raw TLA+ code. Only output a json
structure with the appropriate keys. The json syntax must
be correct; use string escapes where necessary.

Your final output must be a json mapping of the form:

{{ json_map_structure }})prompt";

const char* const kAcl2sTemplate = R"prompt(You are an expert at writing code in the lisp-like acl2s
programming language.

Write function(s) with the following template(s) (fill in
<BODY>):

{{ sig_block }}

You may use the following primitive functions:

{{ primitives_block }}

And you may apply these functions to these terminals
(constants and function arguments):

{{ terminals_block }}

Each function may call itself and it may use if statements.
If multiple functions, they may call each other.

Your function(s) must satisfy the following properties:

{{ properties_block }}

Your function(s) must satisfy the following input-output
example(s):

{{ io_block }}

The following declarations define (mutually) inductive
datatypes and expose their constructors/destructors:

{{ datatype_block }}

It may be useful to know how some data types and functions
are defined:

{{ definitions_block }}

Sketch guidance: For each function listed below, you may
choose any one of its sketches to complete.

{{ sketches_block }}

The following grammar defines the valid expressions for
filling holes:

{{ grammar_block }}

Implement the function(s) now. Do not include any prose,
explanations, or code fences. Just provide the definitions
of the new function(s): {{ function_list }}.)prompt";

Result<Prompt> missing(const std::string& name) {
  return Result<Prompt>::fail("missing placeholder value: " + name);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string render_token_pattern(const Term& pattern) {
  if (pattern.is_atom()) return pattern.atom;
  std::vector<std::string> parts;
  parts.reserve(pattern.children.size());
  for (const Term& child : pattern.children) parts.push_back(child.atom);
  return join(parts, " ");
}

std::string render_grammars(const std::vector<Hole>& holes) {
  std::vector<std::string> blocks;
  for (const Hole& hole : holes) {
    std::string block = "Grammar for hole " + hole.hole_id;
    if (!hole.action_name.empty()) block += " (action " + hole.action_name + ")";
    block += ":";
    for (const std::string& nt : hole.grammar.nonterminals) {
      auto it = hole.grammar.productions.find(nt);
      if (it == hole.grammar.productions.end()) continue;
      for (const Term& pattern : it->second) {
        block += "\n  " + nt + " ::= " + render_token_pattern(pattern);
      }
    }
    blocks.push_back(block);
  }
  return join(blocks, "\n\n");
}

std::string render_json_map_shape(const std::vector<Hole>& holes) {
  std::string out = "{";
  for (size_t i = 0; i < holes.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + holes[i].hole_id + "\": \"...\"";
  }
  out += "}";
  return out;
}

Result<Prompt> build_reactive(const Benchmark& benchmark) {
  if (benchmark.spec_text.empty()) return missing("tlsf_content");
  ReactiveTarget target = ReactiveTarget::Aiger;
  if (const auto* payload = std::get_if<ReactivePayload>(&benchmark.aux)) target = payload->target;
  PromptTemplate tpl = prompt_template(DomainKind::Reactive, target);
  Prompt prompt;
  prompt.system_text = tpl.system_text;
  prompt.user_text = fill_placeholders(tpl.user_template, {{"tlsf_content", benchmark.spec_text}});
  return Result<Prompt>::ok(std::move(prompt));
}

Result<Prompt> build_sygus(const Benchmark& benchmark) {
  if (benchmark.spec_text.empty()) return missing("sygus_content");
  PromptTemplate tpl = prompt_template(DomainKind::Sygus);
  Prompt prompt;
  prompt.system_text = tpl.system_text;
  prompt.user_text = fill_placeholders(tpl.user_template, {{"sygus_content", benchmark.spec_text}});
  return Result<Prompt>::ok(std::move(prompt));
}

Result<Prompt> build_tla_sketch(const Benchmark& benchmark) {
  const auto* payload = std::get_if<TlaSketchPayload>(&benchmark.aux);
  if (!payload || payload->sketch.text.empty()) return missing("sketch");
  const Sketch& sketch = payload->sketch;
  if (sketch.holes.empty()) return missing("list_of_holes");

  std::vector<std::string> hole_ids;
  std::vector<std::string> actions;
  std::set<std::string> seen_actions;
  for (const Hole& hole : sketch.holes) {
    hole_ids.push_back(hole.hole_id);
    if (!hole.action_name.empty() && seen_actions.insert(hole.action_name).second) {
      actions.push_back(hole.action_name);
    }
  }

  std::string text = kTlaHead;
  if (!payload->relaxed_grammar) text += kTlaGrammarSection;
  text += kTlaTail;

  Prompt prompt;
  prompt.user_text = fill_placeholders(
      std::move(text),
      {{"list_of_holes", join(hole_ids, ", ")},
       {"list_of_actions", actions.empty() ? "the sketch" : join(actions, ", ")},
       {"sketch", sketch.text},
       {"properties", join(sketch.properties, "\n")},
       {"grammars", render_grammars(sketch.holes)},
       {"json_map_structure", render_json_map_shape(sketch.holes)}});
  return Result<Prompt>::ok(std::move(prompt));
}

Result<Prompt> build_acl2s(const Benchmark& benchmark) {
  const auto* payload = std::get_if<Acl2sPayload>(&benchmark.aux);
  if (!payload || payload->bundle.signatures.empty()) return missing("sig_block");
  const LispBenchmark& bundle = payload->bundle;

  std::vector<std::string> sigs;
  std::vector<std::string> names;
  for (const FunctionSignature& sig : bundle.signatures) {
    sigs.push_back("(defunc " + sig.name + " (" + join(sig.param_names, " ") + ")\n  <BODY>)");
    names.push_back(sig.name);
  }
  std::vector<std::string> prims;
  for (const auto& [name, arity] : bundle.primitives) {
    prims.push_back("(" + name + " " + std::to_string(arity) + ")");
  }

  Prompt prompt;
  prompt.user_text = fill_placeholders(
      kAcl2sTemplate, {{"sig_block", join(sigs, "\n\n")},
                       {"primitives_block", join(prims, "\n")},
                       {"terminals_block", join(bundle.terminals, " ")},
                       {"properties_block", bundle.properties_text},
                       {"io_block", bundle.io_examples_text},
                       {"datatype_block", bundle.datatypes_text},
                       {"definitions_block", bundle.definitions_text},
                       {"sketches_block", bundle.sketches_text},
                       {"grammar_block", bundle.grammar_text},
                       {"function_list", join(names, ", ")}});
  return Result<Prompt>::ok(std::move(prompt));
}

}  // namespace

PromptTemplate prompt_template(DomainKind domain, ReactiveTarget target) {
  PromptTemplate tpl;
  tpl.domain = domain;
  switch (domain) {
    case DomainKind::Reactive:
      if (target == ReactiveTarget::Aiger) {
        tpl.system_text = kAigerSystem;
        tpl.user_template = kAigerUser;
      } else {
        tpl.system_text = kSmvSystem;
        tpl.user_template = kSmvUser;
      }
      break;
    case DomainKind::Sygus:
      tpl.system_text = kSygusSystem;
      tpl.user_template = kSygusUser;
      break;
    case DomainKind::TlaSketch:
      tpl.user_template = std::string(kTlaHead) + kTlaGrammarSection + kTlaTail;
      break;
    case DomainKind::Acl2sSketch:
      tpl.user_template = kAcl2sTemplate;
      break;
  }
  return tpl;
}

std::string fill_placeholders(std::string text,
                              const std::vector<std::pair<std::string, std::string>>& values) {
  for (const auto& [key, value] : values) {
    const std::string needle = "{{ " + key + " }}";
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
      text.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return text;
}

Result<Prompt> build_prompt(const Benchmark& benchmark) {
  switch (benchmark.domain) {
    case DomainKind::Reactive:
      return build_reactive(benchmark);
    case DomainKind::Sygus:
      return build_sygus(benchmark);
    case DomainKind::TlaSketch:
      return build_tla_sketch(benchmark);
    case DomainKind::Acl2sSketch:
      return build_acl2s(benchmark);
  }
  return Result<Prompt>::fail("unknown domain");
}

}  // namespace veriloop
