use super::*;

#[test]
fn parses_stop() {
    let t = parse("procedure stop; begin end").unwrap();
    let stop = t.get("stop").unwrap();
    assert_eq!(stop.kind, Kind::Procedure);
    assert!(stop.params.is_empty());
    assert_eq!(stop.body.as_deref(), Some(&[][..]));
}

#[test]
fn parses_go() {
    let t = parse("procedure go; begin go end").unwrap();
    assert_eq!(
        t.get("go").unwrap().body,
        Some(vec![Stmt::Call {
            name: "go".into(),
            args: vec![]
        }])
    );
}

#[test]
fn empty_input_is_empty_table() {
    assert!(parse("").unwrap().is_empty());
    assert!(parse("  { only a comment }\n").unwrap().is_empty());
}

#[test]
fn missing_identifier_is_located() {
    let err = parse("procedure ; begin end").unwrap_err();
    match err {
        ParseError::Unexpected {
            pos,
            expected,
            found,
        } => {
            assert_eq!(
                pos,
                Pos {
                    line: 1,
                    column: 11
                }
            );
            assert_eq!(expected, vec!["identifier".to_string()]);
            assert_eq!(found, "`;`");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn duplicate_names_rejected() {
    let err = parse("procedure a; begin end\nprocedure a; begin end").unwrap_err();
    assert!(matches!(err, ParseError::Duplicate { ref name, pos } if name == "a" && pos.line == 2));
}

#[test]
fn unresolved_names_parse() {
    assert!(parse("procedure a; begin nowhere end").is_ok());
}

#[test]
fn reserved_names_rejected() {
    assert!(matches!(
        parse("procedure print; begin end"),
        Err(ParseError::Reserved { .. })
    ));
    assert!(matches!(
        parse("procedure p; begin print ('a', 'b') end"),
        Err(ParseError::BuiltinArity { .. })
    ));
}

#[test]
fn textbook_programs_parse() {
    let src = "
        function halts (p, i: string): boolean;
        { return true if p represents a Pascal procedure with one string input parameter }
        { whose execution terminates when given input i; return false otherwise }

        procedure diag (s: string);
        begin
          if halts (s, s) then diag (s)
        end;

        procedure what (s: string);
        begin
          if not halts (s, s) then what (s)
        end;

        procedure liar1 (s: string);
        begin
          if halts (s, s) then print ('B') else print ('A')
        end
    ";
    let t = parse(src).unwrap();
    assert_eq!(
        t.names().collect::<Vec<_>>(),
        ["halts", "diag", "what", "liar1"]
    );
    assert!(t.get("halts").unwrap().is_header_only());
    let what = t.get("what").unwrap();
    let Some(body) = &what.body else { panic!() };
    let Stmt::If { cond, .. } = &body[0] else {
        panic!()
    };
    assert_eq!(
        cond,
        &Expr::not(Expr::call("halts", vec![Expr::var("s"), Expr::var("s")]))
    );
    assert_eq!(validate(&t), Ok(()));
}

#[test]
fn source_text_is_the_definition_slice() {
    let t = parse("procedure stop; begin end;\r\nprocedure go;\r\nbegin go end").unwrap();
    assert_eq!(t.source("stop"), Some("procedure stop; begin end"));
    assert_eq!(t.source("go"), Some("procedure go;\nbegin go end"));
}

#[test]
fn render_stop() {
    let d = parse_definition("procedure stop; begin end").unwrap();
    assert_eq!(render(&d), "procedure stop;\nbegin\nend");
}

#[test]
fn render_diag_matches_canonical_layout() {
    let d =
        parse_definition("procedure diag(s:string);begin if halts(s,s) then diag(s) end").unwrap();
    assert_eq!(
        render(&d),
        "procedure diag (s: string);\nbegin\n  if halts (s, s) then diag (s)\nend"
    );
}

#[test]
fn render_header_only() {
    let d = parse_definition("function halts (p, i: string): boolean;").unwrap();
    assert_eq!(render(&d), "function halts (p, i: string): boolean;");
}

#[test]
fn nested_if_in_then_branch_keeps_else_binding() {
    let src = "procedure p (s: string); begin if s = 'a' then begin if s = 'b' then print ('x') end else print ('y') end";
    let d = parse_definition(src).unwrap();
    let again = parse_definition(&render(&d)).unwrap();
    assert_eq!(d, again);
    let Some(body) = &d.body else { panic!() };
    assert!(matches!(
        &body[0],
        Stmt::If {
            otherwise: Some(_),
            ..
        }
    ));
}

#[test]
fn quotes_and_nesting_round_trip() {
    let src = "function f (a, b: string): boolean;
begin
  f := false;
  if not (a = concat ('it''s', b)) = (charat (lookup (a), length (b)) = '') then f := true else if a = b then f := not f2 else begin end
end";
    let d = parse_definition(src).unwrap();
    assert_eq!(parse_definition(&render(&d)).unwrap(), d);
}

#[test]
fn halts_header_is_enough_for_diag() {
    let t = parse(
        "function halts (p, i: string): boolean;
         procedure diag (s: string); begin if halts (s, s) then diag (s) end",
    )
    .unwrap();
    assert_eq!(validate(&t), Ok(()));
}

#[test]
fn arity_error() {
    let t = parse(
        "function halts (p, i: string): boolean;
         procedure q; begin if halts ('x') then q end",
    )
    .unwrap();
    let errs = validate(&t).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].definition, "q");
    assert_eq!(errs[0].location, "body[0].cond");
    assert_eq!(
        errs[0].kind,
        SemanticErrorKind::Arity {
            name: "halts".into(),
            expected: 2,
            found: 1
        }
    );
}

#[test]
fn procedure_cannot_assign_result() {
    let t = parse("procedure p; begin p := true end").unwrap();
    let errs = validate(&t).unwrap_err();
    assert_eq!(errs[0].kind, SemanticErrorKind::ResultInProcedure);
}

#[test]
fn other_semantic_errors() {
    let cases = [
        ("procedure p; begin nowhere end", "undefined name `nowhere`"),
        (
            "function f: boolean; begin f := true end; procedure p; begin f end",
            "`f` is a function, not a procedure",
        ),
        (
            "procedure q; begin end; procedure p; begin if q then p end",
            "`q` is a procedure, not a function",
        ),
        (
            "procedure p (s: string); begin if s then p (s) end",
            "expected boolean, found string",
        ),
        (
            "procedure p; begin print (true) end",
            "expected string, found boolean",
        ),
        (
            "procedure p (s: string); begin if s = true then p (s) end",
            "expected string, found boolean",
        ),
        (
            "function f: boolean; begin g := true end",
            "result assignment must target `f`, not `g`",
        ),
        (
            "procedure p (s, s: string); begin end",
            "duplicate parameter `s`",
        ),
    ];
    for (src, msg) in cases {
        let t = parse(src).unwrap();
        let errs = validate(&t).unwrap_err();
        assert!(
            errs.iter().any(|e| e.kind.to_string() == msg),
            "{src}: {errs:?}"
        );
    }
}

#[test]
fn validation_reads_only_headers() {
    let caller = "procedure diag (s: string); begin if d (s, s) then diag (s) end";
    let bodies = [
        "function d (p, i: string): boolean;",
        "function d (p, i: string): boolean; begin d := true end",
        "function d (p, i: string): boolean; begin if p = i then d := false end",
    ];
    for b in bodies {
        let t = parse(format!("{b}\n{caller}")).unwrap();
        let for_diag = validate_definition(&t, t.get("diag").unwrap());
        assert!(for_diag.is_empty(), "{b}");
    }
}

#[test]
fn deterministic_parse() {
    let src = "procedure a (x: string); begin if x = 'q' then a (x) else print (x) end";
    assert_eq!(parse(src).unwrap(), parse(src).unwrap());
}
