#![no_main]

use libfuzzer_sys::fuzz_target;

use confmod::display::render_expression;
use confmod::parse::parse_expression;
use confmod::symbols::SymbolTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let table = SymbolTable::new(
        vec!["v".into(), "a_1".into()],
        vec!["y".into(), "z".into()],
    )
    .unwrap();
    let params = vec!["alpha".to_string()];
    if let Ok(ast) = parse_expression(text, &table, &params) {
        // anything that parses must render back to an equal AST
        let rendered = render_expression(&ast, &table);
        let reparsed = parse_expression(&rendered, &table, &params)
            .expect("rendered expression must reparse");
        assert_eq!(reparsed, ast, "round trip changed the AST for {text:?}");
    }
});
