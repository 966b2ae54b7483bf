#include "tctl/systemfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tctl::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError("system file: field '" + field + "': " + what);
}

const json& member(const json& j, const std::string& field, const std::string& context) {
    auto it = j.find(field);
    if (it == j.end()) fail(context.empty() ? field : context + "." + field, "missing");
    return *it;
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

Tensor3 parse_tensor(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object with 'shape' and 'slices'");
    const json& shape = member(j, "shape", field);
    if (!shape.is_array() || shape.size() != 3) fail(field + ".shape", "expected [rows, cols, tubes]");
    const Index rows = shape[0].get<Index>();
    const Index cols = shape[1].get<Index>();
    const Index tubes = shape[2].get<Index>();
    if (rows < 1 || cols < 1 || tubes < 1) fail(field + ".shape", "dimensions must be positive");

    const json& slices = member(j, "slices", field);
    if (!slices.is_array() || static_cast<Index>(slices.size()) != tubes)
        fail(field + ".slices", "expected one row-major matrix per tube slice");

    Tensor3 t(rows, cols, tubes);
    for (Index k = 0; k < tubes; ++k) {
        const json& slice = slices[static_cast<std::size_t>(k)];
        if (!slice.is_array() || static_cast<Index>(slice.size()) != rows)
            fail(field + ".slices", "slice " + std::to_string(k + 1) + ": expected " +
                                        std::to_string(rows) + " rows");
        for (Index r = 0; r < rows; ++r) {
            const json& row = slice[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Index>(row.size()) != cols)
                fail(field + ".slices", "slice " + std::to_string(k + 1) + ": expected " +
                                            std::to_string(cols) + " columns per row");
            for (Index c = 0; c < cols; ++c)
                t(r, c, k) = Complex(number(row[static_cast<std::size_t>(c)],
                                            field + ".slices"), 0.0);
        }
    }
    if (!t.all_finite()) fail(field, "entries must be finite");
    return t;
}

Complex parse_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) fail(field, "expected an [re, im] pair");
    return {number(j[0], field), number(j[1], field)};
}

DesignSpec parse_design(const json& j, Index n, Index tubes) {
    if (!j.is_object()) fail("design", "expected an object");
    DesignSpec d;
    const json& desired = member(j, "desired", "design");
    if (!desired.is_array() || static_cast<Index>(desired.size()) != tubes)
        fail("design.desired", "expected one eigenvalue list per tube slice (" +
                                   std::to_string(tubes) + ")");
    for (const json& list : desired) {
        if (!list.is_array() || static_cast<Index>(list.size()) != n)
            fail("design.desired", "each list needs exactly " + std::to_string(n) + " eigenvalues");
        std::vector<Complex> spectrum;
        for (const json& z : list) spectrum.push_back(parse_complex(z, "design.desired"));
        d.desired.push_back(std::move(spectrum));
    }
    if (j.contains("bMode")) {
        const std::string m = j["bMode"].get<std::string>();
        if (m == "spectral") d.b_mode = BMode::Spectral;
        else if (m == "first-block") d.b_mode = BMode::FirstBlock;
        else fail("design.bMode", "expected 'spectral' or 'first-block'");
    }
    if (j.contains("assembly")) {
        const std::string m = j["assembly"].get<std::string>();
        if (m == "normalized-idft") d.assembly = Assembly::NormalizedIdft;
        else if (m == "paper-compat") d.assembly = Assembly::PaperCompat;
        else fail("design.assembly", "expected 'normalized-idft' or 'paper-compat'");
    }
    return d;
}

SimulateSpec parse_simulate(const json& j) {
    if (!j.is_object()) fail("simulate", "expected an object");
    SimulateSpec s;
    s.t_final = number(member(j, "tFinal", "simulate"), "simulate.tFinal");
    s.step = number(member(j, "step", "simulate"), "simulate.step");
    if (!(s.t_final > 0.0)) fail("simulate.tFinal", "must be positive");
    if (!(s.step > 0.0)) fail("simulate.step", "must be positive");
    if (j.contains("feedback")) {
        if (!j["feedback"].is_boolean()) fail("simulate.feedback", "expected a boolean");
        s.feedback = j["feedback"].get<bool>();
    }
    if (j.contains("input")) {
        const json& in = j["input"];
        const std::string kind = member(in, "kind", "simulate.input").get<std::string>();
        if (kind == "zero") {
            s.input.kind = InputKind::Zero;
        } else if (kind == "constant") {
            s.input.kind = InputKind::Constant;
            s.input.constant = parse_tensor(member(in, "value", "simulate.input"),
                                            "simulate.input.value");
        } else if (kind == "samples") {
            s.input.kind = InputKind::Samples;
            const json& values = member(in, "values", "simulate.input");
            if (!values.is_array() || values.empty())
                fail("simulate.input.values", "expected a non-empty list of tensors");
            for (const json& v : values)
                s.input.samples.push_back(parse_tensor(v, "simulate.input.values"));
        } else {
            fail("simulate.input.kind", "expected 'zero', 'constant' or 'samples'");
        }
    }
    return s;
}

json tensor_json(const Tensor3& t) {
    if (!t.is_real()) throw Error("system file: only real tensors are serializable");
    json j;
    j["shape"] = {t.rows(), t.cols(), t.tubes()};
    json slices = json::array();
    for (Index k = 0; k < t.tubes(); ++k) {
        json slice = json::array();
        for (Index r = 0; r < t.rows(); ++r) {
            json row = json::array();
            for (Index c = 0; c < t.cols(); ++c) row.push_back(t(r, c, k).real());
            slice.push_back(std::move(row));
        }
        slices.push_back(std::move(slice));
    }
    j["slices"] = std::move(slices);
    return j;
}

}  // namespace

SystemFile parse_system_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("system file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("system file: top level must be an object");

    SystemFile f;
    const json& schema = member(j, "schema", "");
    if (!schema.is_number_integer() || schema.get<int>() != 1)
        fail("schema", "unsupported schema version (expected 1)");
    f.schema = 1;

    f.a = parse_tensor(member(j, "a", ""), "a");
    if (f.a.rows() != f.a.cols()) fail("a", "dynamics tensor not square");
    f.b = parse_tensor(member(j, "b", ""), "b");
    if (f.b.rows() != f.a.rows()) fail("b", "row count differs from dynamics tensor");
    if (f.b.tubes() != f.a.tubes()) fail("b", "tube count differs from dynamics tensor");

    if (j.contains("x0")) {
        f.x0 = parse_tensor(j["x0"], "x0");
        if (f.x0->rows() != f.a.rows() || f.x0->tubes() != f.a.tubes())
            fail("x0", "shape incompatible with the dynamics tensor");
    }
    if (j.contains("k")) {
        f.k = parse_tensor(j["k"], "k");
        if (f.k->rows() != f.b.cols() || f.k->cols() != f.a.rows() || f.k->tubes() != f.a.tubes())
            fail("k", "gain tensor must be q x n x tubes");
    }
    if (j.contains("design")) f.design = parse_design(j["design"], f.a.rows(), f.a.tubes());
    if (j.contains("simulate")) f.simulate = parse_simulate(j["simulate"]);
    return f;
}

SystemFile load_system_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("system file: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_file(buf.str());
}

std::string serialize_system_file(const SystemFile& f) {
    json j;
    j["schema"] = f.schema;
    j["a"] = tensor_json(f.a);
    j["b"] = tensor_json(f.b);
    if (f.x0) j["x0"] = tensor_json(*f.x0);
    if (f.k) j["k"] = tensor_json(*f.k);
    if (f.design) {
        json d;
        json desired = json::array();
        for (const auto& list : f.design->desired) {
            json l = json::array();
            for (const Complex& z : list) l.push_back({z.real(), z.imag()});
            desired.push_back(std::move(l));
        }
        d["desired"] = std::move(desired);
        d["bMode"] = to_string(f.design->b_mode);
        d["assembly"] = to_string(f.design->assembly);
        j["design"] = std::move(d);
    }
    if (f.simulate) {
        json s;
        s["tFinal"] = f.simulate->t_final;
        s["step"] = f.simulate->step;
        s["feedback"] = f.simulate->feedback;
        json in;
        switch (f.simulate->input.kind) {
            case InputKind::Zero: in["kind"] = "zero"; break;
            case InputKind::Constant:
                in["kind"] = "constant";
                in["value"] = tensor_json(*f.simulate->input.constant);
                break;
            case InputKind::Samples: {
                in["kind"] = "samples";
                json values = json::array();
                for (const Tensor3& u : f.simulate->input.samples) values.push_back(tensor_json(u));
                in["values"] = std::move(values);
                break;
            }
        }
        s["input"] = std::move(in);
        j["simulate"] = std::move(s);
    }
    return j.dump(2) + "\n";
}

void save_system_file(const SystemFile& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_system_file: cannot write '" + path.string() + "'");
    out << serialize_system_file(f);
}

}  // namespace tctl::io
