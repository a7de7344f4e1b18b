#!/usr/bin/env python

from setuptools import setup


setup(name='gcdissect',

      version='0.1.0',

      description="Glass-cut self-affine dissections of convex quadrangles: classes, tree search, plans and verification.",
      long_description=open('README.rst').read() + '\n\n' + open('CHANGES.rst').read(),
      classifiers=[
          'Environment :: Console',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: MIT License',
          'Operating System :: OS Independent',
          'Programming Language :: Python',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Mathematics',
      ],
      keywords='dissection affine quadrangle guillotine glass-cut self-affine geometry',

      license='MIT',

      packages=['gcdissect',
                'gcdissect.util',
                ],
      install_requires=['setuptools', 'sympy', 'drawsvg'],
      tests_require=['mock', 'hypothesis'],
      test_suite='test',
      entry_points={
          'console_scripts': ['gcdissect=gcdissect.cli:main'],
      },
      zip_safe=False,
      )
