// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamster/java_ast.hpp"

using namespace hamster::java;

TEST_CASE("empty file parses to empty unit") {
    auto unit = parse_source("", "Empty.java");
    CHECK(unit.type_decls.empty());
    CHECK(unit.parse_errors.empty());
}

TEST_CASE("minimal class") {
    auto unit = parse_source("class A {}", "A.java");
    REQUIRE(unit.type_decls.size() == 1);
    CHECK(unit.type_decls[0].simple_name == "A");
    CHECK(unit.type_decls[0].kind == TypeKind::Class);
    CHECK(unit.type_decls[0].methods.empty());
    CHECK(unit.parse_errors.empty());
}

TEST_CASE("package, imports, annotations, superclass") {
    const char* src = R"(
package com.example.tests;

import org.junit.jupiter.api.Test;
import static org.junit.jupiter.api.Assertions.*;
import java.util.*;

public class StepRuntimeSummaryTest extends MaestroEngineBaseTest {
  @BeforeClass
  public static void init() {
    MaestroEngineBaseTest.init();
  }
}
)";
    auto unit = parse_source(src, "StepRuntimeSummaryTest.java");
    CHECK(unit.package_name == "com.example.tests");
    REQUIRE(unit.imports.size() == 3);
    CHECK(unit.imports[0].path == "org.junit.jupiter.api.Test");
    CHECK(unit.imports[1].is_static);
    CHECK(unit.imports[1].is_wildcard);
    CHECK(unit.imports[1].path == "org.junit.jupiter.api.Assertions");
    CHECK(unit.imports[2].is_wildcard);
    CHECK(unit.imports[2].path == "java.util");
    REQUIRE(unit.type_decls.size() == 1);
    const auto& decl = unit.type_decls[0];
    CHECK(decl.qualified_name == "com.example.tests.StepRuntimeSummaryTest");
    CHECK(decl.superclass == "MaestroEngineBaseTest");
    REQUIRE(decl.methods.size() == 1);
    const auto& m = decl.methods[0];
    CHECK(m.name == "init");
    REQUIRE(m.annotations.size() == 1);
    CHECK(m.annotations[0].name == "BeforeClass");
    CHECK(m.modifiers.count("static") == 1);
    CHECK(unit.parse_errors.empty());
}

TEST_CASE("method body statements and expressions") {
    const char* src = R"(
class T {
  void m() {
    Rule<Action> r = new Rule<>(new ANDCondition(new EQUALCondition(1)));
    Assert.assertEquals(ACTION, r.getAction());
    server.stop().join();
    list.forEach(x -> x.run());
    Runnable f = T::helper;
    int y = cond ? 1 : 2;
    if (a && b) { y++; }
  }
}
)";
    auto unit = parse_source(src, "T.java");
    REQUIRE(unit.type_decls.size() == 1);
    REQUIRE(unit.type_decls[0].methods.size() == 1);
    const auto& body = unit.type_decls[0].methods[0].body;
    REQUIRE(body != nullptr);
    CHECK(body->stmts.size() == 7);
    CHECK(unit.parse_errors.empty());

    const auto& decl = *body->stmts[0];
    CHECK(decl.kind == StmtKind::LocalVar);
    CHECK(decl.name == "r");
    CHECK(erase_generics(decl.declared_type) == "Rule");
    REQUIRE(decl.exprs.size() == 1);
    CHECK(decl.exprs[0]->kind == ExprKind::ObjectCreation);
    CHECK(decl.exprs[0]->type_name == "Rule");
    REQUIRE(decl.exprs[0]->args.size() == 1);
    CHECK(decl.exprs[0]->args[0]->kind == ExprKind::ObjectCreation);

    const auto& chained = *body->stmts[2];
    REQUIRE(chained.exprs.size() == 1);
    const auto* join = chained.exprs[0].get();
    CHECK(join->kind == ExprKind::MethodCall);
    CHECK(join->name == "join");
    CHECK(join->target->kind == ExprKind::MethodCall);
    CHECK(join->target->name == "stop");

    const auto* lambda_call = body->stmts[3]->exprs[0].get();
    REQUIRE(lambda_call->args.size() == 1);
    CHECK(lambda_call->args[0]->kind == ExprKind::Lambda);

    const auto& mref = *body->stmts[4];
    CHECK(mref.exprs[0]->kind == ExprKind::MethodRef);
    CHECK(mref.exprs[0]->name == "helper");
}

TEST_CASE("class literal and mock-style call") {
    auto unit = parse_source(
        "class T { void m() { x = mock(HttpRequestMetaData.class); } }", "T.java");
    const auto& assign = *unit.type_decls[0].methods[0].body->stmts[0];
    const auto* call = assign.exprs[0]->rhs.get();
    REQUIRE(call != nullptr);
    CHECK(call->kind == ExprKind::MethodCall);
    CHECK(call->name == "mock");
    REQUIRE(call->args.size() == 1);
    CHECK(call->args[0]->kind == ExprKind::ClassLiteral);
    CHECK(call->args[0]->type_name == "HttpRequestMetaData");
}

TEST_CASE("anonymous class and initializer block") {
    const char* src = R"(
class T {
  void m() {
    Runnable r = new Runnable() {
      public void run() { doWork(); }
    };
  }
}
)";
    auto unit = parse_source(src, "T.java");
    const auto& decl = *unit.type_decls[0].methods[0].body->stmts[0];
    const auto* creation = decl.exprs[0].get();
    CHECK(creation->kind == ExprKind::ObjectCreation);
    REQUIRE(creation->anon_body != nullptr);
    CHECK(creation->anon_body->methods.size() == 1);
    CHECK(unit.parse_errors.empty());
}

TEST_CASE("control flow statements") {
    const char* src = R"(
class T {
  int m(int n) {
    int total = 0;
    for (int i = 0; i < n; i++) {
      total += i;
    }
    for (String s : names) { use(s); }
    while (total > 100) { total /= 2; }
    do { total--; } while (total > 50);
    switch (total) {
      case 1:
      case 2: total = 0; break;
      default: break;
    }
    try (Reader rd = open("f")) {
      read(rd);
    } catch (IOException | RuntimeException e) {
      handle(e);
    } finally {
      done();
    }
    return total;
  }
}
)";
    auto unit = parse_source(src, "T.java");
    CHECK(unit.parse_errors.empty());
    const auto& body = *unit.type_decls[0].methods[0].body;
    CHECK(body.stmts.size() == 8);
    CHECK(body.stmts[1]->kind == StmtKind::For);
    CHECK(body.stmts[2]->kind == StmtKind::ForEach);
    CHECK(body.stmts[3]->kind == StmtKind::While);
    CHECK(body.stmts[4]->kind == StmtKind::DoWhile);
    CHECK(body.stmts[5]->kind == StmtKind::Switch);
    CHECK(body.stmts[6]->kind == StmtKind::Try);
}

TEST_CASE("nested types get dollar-qualified names") {
    auto unit = parse_source(
        "package p; class Outer { static class Inner { void x() {} } }", "O.java");
    REQUIRE(unit.type_decls.size() == 1);
    REQUIRE(unit.type_decls[0].nested.size() == 1);
    CHECK(unit.type_decls[0].nested[0].qualified_name == "p.Outer$Inner");
}

TEST_CASE("garbage input yields errors, not crashes") {
    auto unit = parse_source("\x01\x02 class ))) {{{ %%% ", "bad.java");
    CHECK(!unit.parse_errors.empty());
    auto unit2 = parse_source("class A { void m() { x +++++; ]]] } }", "bad2.java");
    CHECK(unit2.type_decls.size() == 1);
    CHECK(!unit2.parse_errors.empty());
}

TEST_CASE("generics, varargs, arrays, shifts") {
    const char* src = R"(
class T {
  Map<String, List<Integer>> index = new HashMap<>();
  int shift(int a, int b) { return (a >> 2) + (b >>> 1) + (a << 3); }
  void var(String... parts) {}
  int[] arr() { return new int[] {1, 2, 3}; }
}
)";
    auto unit = parse_source(src, "T.java");
    CHECK(unit.parse_errors.empty());
    CHECK(unit.type_decls[0].fields.size() == 1);
    CHECK(unit.type_decls[0].methods.size() == 3);
    CHECK(unit.type_decls[0].methods[1].parameters[0].type == "String[]");
}

TEST_CASE("text block and string literals") {
    std::string src = "class T { String s = \"\"\"\n  hello\n  world\n  \"\"\"; "
                      "String t = \"a\\\"b\"; char c = 'x'; }";
    auto unit = parse_source(src, "T.java");
    CHECK(unit.parse_errors.empty());
    CHECK(unit.type_decls[0].fields.size() == 3);
}

TEST_CASE("signature strings erase generics") {
    auto unit = parse_source(
        "class T { void m(List<String> a, int[] b, Map<K,V> c) {} }", "T.java");
    CHECK(unit.type_decls[0].methods[0].signature() == "m(List,int[],Map)");
}

TEST_CASE("enum with constants and members") {
    const char* src = R"(
enum Color {
  RED, GREEN("g"), BLUE {
    int weight() { return 3; }
  };
  Color() {}
  Color(String s) {}
  int weight() { return 0; }
}
)";
    auto unit = parse_source(src, "Color.java");
    CHECK(unit.parse_errors.empty());
    const auto& e = unit.type_decls[0];
    CHECK(e.kind == TypeKind::Enum);
    CHECK(e.fields.size() == 3);
    CHECK(e.methods.size() == 3);
}
