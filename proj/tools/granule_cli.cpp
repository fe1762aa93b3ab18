// granule — command-line front end for the binary granule-constraint reasoner.
//
// Exit codes: 0 entailed/sat/ok, 1 not entailed/unsat/no model, 2 errors
// (usage, parse, unknown granules).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "granule/engine.hpp"
#include "granule/json_io.hpp"
#include "granule/parser.hpp"
#include "granule/semantics.hpp"

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw granule::error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw granule::error("cannot write '" + out_path + "'");
    out << text;
}

// Optional proof rendering next to the JSON verdict.
void emit_proof(const std::optional<granule::ProofTree>& proof, const std::string& format,
                const std::string& out_path)
{
    if (format.empty() || format == "json" || !proof)
        return;
    if (format == "text")
        write_output(render_text(*proof), out_path);
    else if (format == "dot")
        write_output(render_dot(*proof), out_path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reasoner for binary granule constraints (subsumption, disjointness, negations)"};
    app.require_subcommand(1);

    std::string file, query, g1, g2, prove, out_path;

    auto add_prove = [&](CLI::App* cmd) {
        cmd->add_option("--prove", prove, "Proof rendering: text, dot or json")
            ->check(CLI::IsMember({"text", "dot", "json"}));
        cmd->add_option("--out", out_path, "Write the rendering to a file instead of stdout");
    };

    CLI::App* cmd_entail = app.add_subcommand("entail", "Decide whether the schema entails a constraint");
    cmd_entail->add_option("file", file, "Schema document (.gl)")->required();
    cmd_entail->add_option("constraint", query, "Query, e.g. \"!Sub(g1, g2)\"")->required();
    add_prove(cmd_entail);

    CLI::App* cmd_sat = app.add_subcommand("sat", "Decide satisfiability of the schema");
    cmd_sat->add_option("file", file, "Schema document (.gl)")->required();
    add_prove(cmd_sat);

    CLI::App* cmd_closure = app.add_subcommand("closure", "List all entailed ground constraints");
    cmd_closure->add_option("file", file, "Schema document (.gl)")->required();

    CLI::App* cmd_classify = app.add_subcommand("classify", "RCC5+ relations consistent with a granule pair");
    cmd_classify->add_option("file", file, "Schema document (.gl)")->required();
    cmd_classify->add_option("g1", g1, "First granule")->required();
    cmd_classify->add_option("g2", g2, "Second granule")->required();

    CLI::App* cmd_model = app.add_subcommand("model", "Dump the canonical model of the positive part");
    cmd_model->add_option("file", file, "Schema document (.gl)")->required();

    CLI::App* cmd_graph = app.add_subcommand("graph", "Export the schema graph");
    cmd_graph->add_option("file", file, "Schema document (.gl)")->required();
    bool want_dot = false;
    cmd_graph->add_flag("--dot", want_dot, "Emit graphviz DOT");
    cmd_graph->add_option("--out", out_path, "Write the DOT to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        granule::Schema schema = granule::parse_schema(read_file(file));

        if (cmd_entail->parsed()) {
            granule::Constraint c = granule::parse_constraint(query, schema);
            granule::Decision d = granule::Reasoner(schema).entails(c);
            std::cout << granule::to_json(d).dump() << "\n";
            emit_proof(d.proof, prove, out_path);
            return d.entailed ? 0 : 1;
        }
        if (cmd_sat->parsed()) {
            granule::SatResult r = granule::check_satisfiable(schema);
            std::cout << granule::to_json(r).dump() << "\n";
            emit_proof(r.proof, prove, out_path);
            return r.satisfiable ? 0 : 1;
        }
        if (cmd_closure->parsed()) {
            for (const auto& c : granule::closure(schema))
                std::cout << granule::to_string(c) << "\n";
            return 0;
        }
        if (cmd_classify->parsed()) {
            // Reuse the constraint production to resolve and validate the pair.
            granule::Constraint pair = granule::parse_constraint("Sub(" + g1 + ", " + g2 + ")", schema);
            granule::StateVector v = granule::state_vector(schema, pair.left(), pair.right());
            std::cout << granule::classification_json(v).dump() << "\n";
            return 0;
        }
        if (cmd_model->parsed()) {
            try {
                granule::AtomModel m = granule::canonical_model(schema.positive_part());
                std::cout << granule::dump_model(m);
                return 0;
            } catch (const granule::error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1; // no model: positive part unsatisfiable
            }
        }
        if (cmd_graph->parsed()) {
            if (!want_dot)
                throw granule::error("graph: only --dot output is supported");
            write_output(granule::SmasGraph::build(schema).to_dot(), out_path);
            return 0;
        }
    } catch (const granule::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const granule::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
