import unittest
import os
import sys
import tempfile
import shutil

# Add the project root to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.corr_equality.errors import (
    DegenerateDataError, InputParseError, TooFewObservationsError, ValidationError,
)
from src.handlers.input_handlers import (
    CsvPairHandler, InputHandler, InputLoader, InputSource, SummaryHandler, default_loader, ingest_csv,
)


class TestIngestCsv(unittest.TestCase):
    """Tests for reading paired observations from CSV files."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up after tests."""
        shutil.rmtree(self.temp_dir)

    def write(self, name, content):
        path = os.path.join(self.temp_dir, name)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content)
        return path

    def test_well_formed_file(self):
        path = self.write('a.csv', '1,2\n2,1\n3,4\n4,3\n')
        data = ingest_csv(path)
        self.assertEqual(data.n, 4)
        self.assertEqual(list(data.ys), [2.0, 1.0, 4.0, 3.0])

    def test_header_auto_detected(self):
        path = self.write('a.csv', 'x,y\n1,2\n2,1\n3,4\n4,3\n')
        self.assertEqual(ingest_csv(path).n, 4)

    def test_explicit_header_skips_first_row(self):
        path = self.write('a.csv', '0,0\n1,2\n2,1\n3,4\n4,3\n')
        self.assertEqual(ingest_csv(path, header=True).n, 4)
        self.assertEqual(ingest_csv(path, header=False).n, 5)

    def test_header_refused_when_disabled(self):
        path = self.write('a.csv', 'x,y\n1,2\n2,1\n3,4\n4,3\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path, header=False)
        self.assertEqual(ctx.exception.line, 1)

    def test_text_in_row_three(self):
        path = self.write('bad.csv', '1,2\n2,1\nthree,4\n4,3\n5,5\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path)
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn(':3:', str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_ragged_row(self):
        path = self.write('ragged.csv', '1,2\n2,1,7\n3,4\n4,3\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path)
        self.assertEqual(ctx.exception.line, 2)

    def test_missing_file(self):
        with self.assertRaises(InputParseError):
            ingest_csv(os.path.join(self.temp_dir, 'nope.csv'))

    def test_too_few_rows(self):
        path = self.write('short.csv', '1,2\n2,1\n3,4\n')
        with self.assertRaises(TooFewObservationsError):
            ingest_csv(path)

    def test_constant_column(self):
        path = self.write('flat.csv', '1,5\n2,5\n3,5\n4,5\n')
        with self.assertRaises(DegenerateDataError):
            ingest_csv(path)

    def test_blank_lines_and_bom(self):
        path = self.write('bom.csv', '\ufeffx,y\n1,2\n\n2,1\n3,4\n4,3\n\n')
        self.assertEqual(ingest_csv(path).n, 4)

    def write_bytes(self, name, content):
        path = os.path.join(self.temp_dir, name)
        with open(path, 'wb') as f:
            f.write(content)
        return path

    def test_invalid_utf8_names_the_row(self):
        path = self.write_bytes('latin1.csv', b'1,2\n2,3\n3,\xff5\n4,1\n5,2\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path)
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn(':3:', str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_invalid_utf8_after_bom(self):
        path = self.write_bytes('bom.csv', b'\xef\xbb\xbfx,y\n1,2\n\xe92,1\n3,4\n4,3\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path)
        self.assertEqual(ctx.exception.line, 3)

    def test_oversized_field(self):
        path = self.write('huge.csv', '1,2\n"' + '9' * 200000 + '",1\n3,4\n4,3\n')
        with self.assertRaises(InputParseError) as ctx:
            ingest_csv(path)
        self.assertEqual(ctx.exception.line, 2)


class TestInputLoader(unittest.TestCase):
    """Tests for dispatching input sources to handlers."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_source_needs_exactly_one_input(self):
        with self.assertRaises(ValidationError):
            InputSource()
        with self.assertRaises(ValidationError):
            InputSource(csv_paths=('a.csv', 'b.csv'), summary=(10, 0.1, 10, 0.2))

    def test_summary(self):
        g1, g2 = default_loader().load(InputSource(summary=(14, -0.34, 14, 0.812)))
        self.assertEqual((g1.n, g1.r, g2.n, g2.r), (14, -0.34, 14, 0.812))

    def test_summary_validation(self):
        loader = default_loader()
        with self.assertRaises(ValidationError):
            loader.load(InputSource(summary=(14.5, 0.1, 14, 0.2)))
        with self.assertRaises(TooFewObservationsError):
            loader.load(InputSource(summary=(3, 0.1, 14, 0.2)))
        with self.assertRaises(DegenerateDataError):
            loader.load(InputSource(summary=(14, 1.0, 14, 0.2)))

    def test_csv_pair(self):
        paths = []
        for name, rows in (('a.csv', '1,2\n2,1\n3,4\n4,3\n'), ('b.csv', '1,1\n2,3\n3,2\n4,5\n5,4\n')):
            path = os.path.join(self.temp_dir, name)
            with open(path, 'w') as f:
                f.write(rows)
            paths.append(path)
        g1, g2 = default_loader().load(InputSource(csv_paths=tuple(paths)))
        self.assertEqual((g1.n, g2.n), (4, 5))
        self.assertAlmostEqual(g1.r, 0.6)

    def test_describe(self):
        self.assertEqual(InputSource(summary=(14, 0.5, 20, 0.1)).describe(), {'summary': [14, 0.5, 20, 0.1]})
        self.assertEqual(InputSource(csv_paths=('a', 'b'), header=True).describe(),
                         {'csv': ['a', 'b'], 'header': True})

    def test_no_handler(self):
        loader = InputLoader()
        loader.register_handler(CsvPairHandler())
        with self.assertRaises(ValidationError):
            loader.load(InputSource(summary=(10, 0.1, 10, 0.2)))

    def test_handler_order(self):
        class Fixed(InputHandler):
            def can_handle(self, source):
                return True

            def load(self, source):
                return 'fixed'

        loader = InputLoader()
        loader.register_handler(Fixed())
        loader.register_handler(SummaryHandler())
        self.assertEqual(loader.load(InputSource(summary=(10, 0.1, 10, 0.2))), 'fixed')


if __name__ == '__main__':
    unittest.main()
