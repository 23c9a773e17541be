#ifndef WHTOR_DOCUMENT_HPP
#define WHTOR_DOCUMENT_HPP

#include "whtor/poincare.hpp"

namespace whtor {

// Syntax error, unresolved reference, or malformed literal, with position.
struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line_, int column_, const std::string& msg);
};

// Structurally valid input whose mathematical invariants fail (d∘d != 0,
// non-chain map, non-unit where a unit is required, ...), with the line of
// the offending declaration.
struct InvariantViolation : std::runtime_error {
    int line;
    InvariantViolation(int line_, const std::string& msg);
};

struct DocumentTask {
    std::string kind;  // torsion | invariants | rho | glue | s1 | transfer
    std::vector<std::string> args;
    int line = 0;
};

struct ModelDocument {
    GroupSpecPtr group;
    std::vector<std::vector<long>> alpha;  // declared twist; empty = identity
    std::map<std::string, GRElement> elements;
    std::map<std::string, BasedChainComplex> complexes;
    std::map<std::string, ChainMap> maps;
    std::map<std::string, PoincarePairData> pairs;
    std::vector<DocumentTask> tasks;
};

// Element literal over declared generator names: `3*t^2 - 1*g*t^-1 + 1`.
GRElement parse_element(const GroupSpecPtr& spec, const std::vector<std::string>& names,
                        const std::string& text, int line = 0);
// Matrix literal `[a, b; c, d]`; `[]` denotes the 0 x 0 matrix.
GRMatrix parse_matrix(const GroupSpecPtr& spec, const std::vector<std::string>& names,
                      const std::string& text, int line = 0);

ModelDocument parse_document(const std::string& text);
ModelDocument parse_document_file(const std::string& path);

}  // namespace whtor

#endif
